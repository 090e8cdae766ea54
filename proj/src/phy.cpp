#include "adapilot/phy.hpp"

#include <algorithm>
#include <cmath>

#include "adapilot/dsp.hpp"
#include "adapilot/error.hpp"
#include "adapilot/estimation.hpp"

namespace adapilot {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt10 = 0.31622776601683793320;

// Gray axis for 16-QAM: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
double qam16_axis(std::uint8_t b0, std::uint8_t b1) {
    const double mag = b0 ? (b1 ? 1.0 : 3.0) : (b1 ? -1.0 : -3.0);
    return mag * kInvSqrt10;
}

void qam16_axis_demap(double v, std::uint8_t* out) {
    const double x = v / kInvSqrt10;
    if (x < -2.0) {
        out[0] = 0; out[1] = 0;
    } else if (x < 0.0) {
        out[0] = 0; out[1] = 1;
    } else if (x < 2.0) {
        out[0] = 1; out[1] = 1;
    } else {
        out[0] = 1; out[1] = 0;
    }
}

}  // namespace

cplx map_bits(std::span<const std::uint8_t> bits, int modulation_order) {
    if (modulation_order == 2) {
        if (bits.size() < 2) {
            throw LengthMismatchError("map_bits: QPSK needs 2 bits");
        }
        return cplx((bits[0] ? -kInvSqrt2 : kInvSqrt2), (bits[1] ? -kInvSqrt2 : kInvSqrt2));
    }
    if (modulation_order == 4) {
        if (bits.size() < 4) {
            throw LengthMismatchError("map_bits: 16-QAM needs 4 bits");
        }
        return cplx(qam16_axis(bits[0], bits[1]), qam16_axis(bits[2], bits[3]));
    }
    throw ConfigError("map_bits: unsupported modulation order");
}

void demap_hard(cplx value, int modulation_order, std::uint8_t* bits_out) {
    if (modulation_order == 2) {
        bits_out[0] = value.real() < 0.0 ? 1 : 0;
        bits_out[1] = value.imag() < 0.0 ? 1 : 0;
        return;
    }
    if (modulation_order == 4) {
        qam16_axis_demap(value.real(), bits_out);
        qam16_axis_demap(value.imag(), bits_out + 2);
        return;
    }
    throw ConfigError("demap_hard: unsupported modulation order");
}

TimeDomainSignal modulate(const OfdmGrid& grid, const LinkConfig& config) {
    const int n = config.num_subcarriers;
    if (grid.num_subcarriers != n) {
        throw LengthMismatchError("modulate: grid width does not match config");
    }
    const int sps = n + config.cp_length;

    TimeDomainSignal out;
    out.samples_per_symbol = sps;
    out.samples.resize(static_cast<std::size_t>(grid.num_symbols) * sps);

    std::vector<cplx> work(n);
    for (int t = 0; t < grid.num_symbols; ++t) {
        std::copy_n(&grid.at(t, 0), n, work.begin());
        dsp::fft_unitary_inplace(work, /*inverse=*/true);
        cplx* dst = out.samples.data() + static_cast<std::size_t>(t) * sps;
        // Cyclic prefix = tail of the useful part.
        std::copy_n(work.data() + n - config.cp_length, config.cp_length, dst);
        std::copy_n(work.data(), n, dst + config.cp_length);
    }
    return out;
}

std::vector<cplx> demodulate(const TimeDomainSignal& signal, const LinkConfig& config) {
    const int n = config.num_subcarriers;
    const int sps = n + config.cp_length;
    if (signal.samples_per_symbol != sps || signal.samples.size() % sps != 0) {
        throw LengthMismatchError("demodulate: sample count inconsistent with config");
    }
    const int num_symbols = static_cast<int>(signal.samples.size()) / sps;

    std::vector<cplx> out(static_cast<std::size_t>(num_symbols) * n);
    std::vector<cplx> work(n);
    for (int t = 0; t < num_symbols; ++t) {
        const cplx* src = signal.samples.data() + static_cast<std::size_t>(t) * sps + config.cp_length;
        std::copy_n(src, n, work.begin());
        dsp::fft_unitary_inplace(work, /*inverse=*/false);
        std::copy_n(work.data(), n, out.data() + static_cast<std::size_t>(t) * n);
    }
    return out;
}

EqualizedSymbols equalize_and_demap(std::span<const cplx> received, const ChannelEstimate& estimate,
                                    const OfdmGrid& grid, const LinkConfig& config,
                                    std::mt19937_64& erasure_rng) {
    const int n = config.num_subcarriers;
    if (static_cast<int>(estimate.gains.size()) != n) {
        throw LengthMismatchError("equalize_and_demap: estimate does not cover all subcarriers");
    }
    if (received.size() != grid.symbols.size()) {
        throw LengthMismatchError("equalize_and_demap: received matrix shape mismatch");
    }

    double max_gain = 0.0;
    for (const auto& g : estimate.gains) {
        max_gain = std::max(max_gain, std::abs(g));
    }
    const double gain_floor = 1e-6 * max_gain;

    const int bits_per_cell = config.bits_per_cell();
    EqualizedSymbols out;
    out.values.reserve(received.size());
    out.bits.reserve(received.size() * bits_per_cell);

    std::uint8_t cell_bits[4] = {0, 0, 0, 0};
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < grid.num_symbols; ++t) {
        for (int k = 0; k < n; ++k) {
            if (grid.role(t, k) != CellRole::Data) {
                continue;
            }
            const cplx y = received[static_cast<std::size_t>(t) * n + k];
            const cplx h = estimate.gains[k];
            if (std::abs(h) <= gain_floor) {
                // Deep-fade cell: decide at random, flag as erasure.
                out.values.push_back(cplx{});
                for (int b = 0; b < bits_per_cell; ++b) {
                    out.bits.push_back(static_cast<std::uint8_t>(coin(erasure_rng)));
                }
                ++out.erasures;
                continue;
            }
            const cplx z = y / h;
            out.values.push_back(z);
            demap_hard(z, config.modulation_order, cell_bits);
            out.bits.insert(out.bits.end(), cell_bits, cell_bits + bits_per_cell);
        }
    }
    return out;
}

}  // namespace adapilot

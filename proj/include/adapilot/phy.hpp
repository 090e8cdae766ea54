#pragma once

#include <random>
#include <span>
#include <vector>

#include "adapilot/grid.hpp"

namespace adapilot {

struct ChannelEstimate;  // estimation.hpp

// Baseband sample stream; one OFDM symbol occupies cp_length + N samples.
struct TimeDomainSignal {
    std::vector<cplx> samples;
    int samples_per_symbol = 0;

    int num_symbols() const {
        return samples_per_symbol > 0 ? static_cast<int>(samples.size()) / samples_per_symbol : 0;
    }
};

// Constellation mapping, Gray-coded, unit average energy.
cplx map_bits(std::span<const std::uint8_t> bits, int modulation_order);
void demap_hard(cplx value, int modulation_order, std::uint8_t* bits_out);

// IFFT per symbol plus cyclic prefix; unitary scaling.
TimeDomainSignal modulate(const OfdmGrid& grid, const LinkConfig& config);

// CP removal plus forward FFT; returns the received time-major cell matrix.
// Throws LengthMismatchError when the sample count is inconsistent.
std::vector<cplx> demodulate(const TimeDomainSignal& signal, const LinkConfig& config);

struct EqualizedSymbols {
    std::vector<cplx> values;          // one entry per data cell, (t, k) order
    std::vector<std::uint8_t> bits;    // hard decisions, (t, k) order
    long erasures = 0;                 // cells decided at random under a vanishing estimate
};

// Zero-forcing equalization of every Data cell followed by hard demapping.
// Cells whose estimated gain falls below 1e-6 * max|H| get random bits from
// `erasure_rng` and are counted in `erasures`.
EqualizedSymbols equalize_and_demap(std::span<const cplx> received, const ChannelEstimate& estimate,
                                    const OfdmGrid& grid, const LinkConfig& config,
                                    std::mt19937_64& erasure_rng);

}  // namespace adapilot

#include <cmath>
#include <numbers>

#include "adapilot/channel.hpp"
#include "adapilot/error.hpp"
#include "adapilot/estimation.hpp"
#include "adapilot/phy.hpp"
#include "adapilot/rng.hpp"
#include "doctest.h"

using namespace adapilot;

namespace {

LinkConfig config16() {
    LinkConfig c;
    c.num_subcarriers = 16;
    c.cp_length = 4;
    return c;
}

OfdmGrid data_grid(const LinkConfig& cfg, int num_symbols, std::uint64_t seed,
                   std::vector<std::uint8_t>* bits_out = nullptr) {
    auto rng = make_rng(seed);
    OfdmGrid grid;
    grid.num_symbols = num_symbols;
    grid.num_subcarriers = cfg.num_subcarriers;
    grid.roles.assign(static_cast<std::size_t>(num_symbols) * cfg.num_subcarriers, CellRole::Data);
    grid.symbols.resize(grid.roles.size());
    std::vector<std::uint8_t> bits(grid.roles.size() * cfg.bits_per_cell());
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng() & 1);
    }
    std::size_t pos = 0;
    for (auto& cell : grid.symbols) {
        cell = map_bits(std::span(bits).subspan(pos, cfg.bits_per_cell()), cfg.modulation_order);
        pos += cfg.bits_per_cell();
    }
    if (bits_out) {
        *bits_out = std::move(bits);
    }
    return grid;
}

}  // namespace

TEST_CASE("a lone DC subcarrier modulates to a constant 1/sqrt(N)") {
    const LinkConfig cfg = config16();
    OfdmGrid grid;
    grid.num_symbols = 1;
    grid.num_subcarriers = 16;
    grid.symbols.assign(16, cplx{});
    grid.roles.assign(16, CellRole::Data);
    grid.at(0, 0) = cplx(1.0, 0.0);

    const TimeDomainSignal sig = modulate(grid, cfg);
    REQUIRE(sig.samples.size() == 20);
    for (int i = cfg.cp_length; i < sig.samples_per_symbol; ++i) {
        CHECK(std::abs(sig.samples[i] - cplx(0.25, 0.0)) < 1e-12);
    }
    // CP repeats the tail.
    for (int i = 0; i < cfg.cp_length; ++i) {
        CHECK(std::abs(sig.samples[i] - sig.samples[16 + i]) < 1e-15);
    }
}

TEST_CASE("an all-zero grid modulates to silence") {
    const LinkConfig cfg = config16();
    OfdmGrid grid;
    grid.num_symbols = 3;
    grid.num_subcarriers = 16;
    grid.symbols.assign(48, cplx{});
    grid.roles.assign(48, CellRole::Data);
    const TimeDomainSignal sig = modulate(grid, cfg);
    for (const auto& v : sig.samples) {
        CHECK(std::abs(v) == 0.0);
    }
    const auto rx = demodulate(sig, cfg);
    for (const auto& v : rx) {
        CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("demodulate inverts modulate to 1e-12 per cell") {
    const LinkConfig cfg = config16();
    const OfdmGrid grid = data_grid(cfg, 5, 17);
    const auto rx = demodulate(modulate(grid, cfg), cfg);
    REQUIRE(rx.size() == grid.symbols.size());
    for (std::size_t i = 0; i < rx.size(); ++i) {
        CHECK(std::abs(rx[i] - grid.symbols[i]) < 1e-12);
    }
}

TEST_CASE("a delay inside the CP window becomes a per-subcarrier phase ramp") {
    const LinkConfig cfg = config16();
    const int d = 3;
    const OfdmGrid grid = data_grid(cfg, 4, 23);
    TimeDomainSignal sig = modulate(grid, cfg);

    TimeDomainSignal delayed;
    delayed.samples_per_symbol = sig.samples_per_symbol;
    delayed.samples.assign(sig.samples.size(), cplx{});
    for (std::size_t i = 0; i + d < sig.samples.size(); ++i) {
        delayed.samples[i + d] = sig.samples[i];
    }

    const auto rx = demodulate(delayed, cfg);
    for (int t = 0; t < grid.num_symbols; ++t) {
        for (int k = 0; k < 16; ++k) {
            const double angle = -2.0 * std::numbers::pi * k * d / 16.0;
            const cplx expected = grid.at(t, k) * cplx(std::cos(angle), std::sin(angle));
            CHECK(std::abs(rx[t * 16 + k] - expected) < 1e-10);
        }
    }
}

TEST_CASE("demodulate rejects inconsistent sample counts") {
    const LinkConfig cfg = config16();
    TimeDomainSignal sig;
    sig.samples_per_symbol = 20;
    sig.samples.assign(30, cplx{});
    CHECK_THROWS_AS(demodulate(sig, cfg), LengthMismatchError);
}

TEST_CASE("useful-part energy matches frequency-domain energy") {
    const LinkConfig cfg = config16();
    const OfdmGrid grid = data_grid(cfg, 6, 31);
    const TimeDomainSignal sig = modulate(grid, cfg);

    double freq_energy = 0.0;
    for (const auto& v : grid.symbols) {
        freq_energy += std::norm(v);
    }
    double time_energy = 0.0;
    for (int t = 0; t < grid.num_symbols; ++t) {
        for (int i = cfg.cp_length; i < sig.samples_per_symbol; ++i) {
            time_energy += std::norm(sig.samples[t * sig.samples_per_symbol + i]);
        }
    }
    CHECK(time_energy == doctest::Approx(freq_energy).epsilon(1e-9));
}

TEST_CASE("hard demapping inverts the mapper for every constellation point") {
    for (int order : {2, 4}) {
        const int patterns = 1 << order;
        for (int p = 0; p < patterns; ++p) {
            std::vector<std::uint8_t> bits(order);
            for (int b = 0; b < order; ++b) {
                bits[b] = static_cast<std::uint8_t>((p >> b) & 1);
            }
            const cplx point = map_bits(bits, order);
            std::uint8_t decided[4] = {9, 9, 9, 9};
            demap_hard(point, order, decided);
            for (int b = 0; b < order; ++b) {
                CHECK(decided[b] == bits[b]);
            }
        }
    }
}

TEST_CASE("constellations have unit average energy") {
    for (int order : {2, 4}) {
        const int patterns = 1 << order;
        double energy = 0.0;
        for (int p = 0; p < patterns; ++p) {
            std::vector<std::uint8_t> bits(order);
            for (int b = 0; b < order; ++b) {
                bits[b] = static_cast<std::uint8_t>((p >> b) & 1);
            }
            energy += std::norm(map_bits(bits, order));
        }
        CHECK(energy / patterns == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("zero-forcing with a unit estimate recovers the bits exactly") {
    const LinkConfig cfg = config16();
    std::vector<std::uint8_t> tx_bits;
    const OfdmGrid grid = data_grid(cfg, 2, 41, &tx_bits);

    ChannelEstimate est;
    est.gains.assign(16, cplx(1.0, 0.0));
    est.sounded_at = 0;
    auto rng = make_rng(1);
    const EqualizedSymbols eq = equalize_and_demap(grid.symbols, est, grid, cfg, rng);
    REQUIRE(eq.bits.size() == tx_bits.size());
    CHECK(eq.bits == tx_bits);
    CHECK(eq.erasures == 0);
}

TEST_CASE("a common scale cancels between channel and estimate") {
    const LinkConfig cfg = config16();
    std::vector<std::uint8_t> tx_bits;
    const OfdmGrid grid = data_grid(cfg, 1, 43, &tx_bits);

    std::vector<cplx> received(grid.symbols.size());
    for (std::size_t i = 0; i < received.size(); ++i) {
        received[i] = 2.0 * grid.symbols[i];
    }
    ChannelEstimate est;
    est.gains.assign(16, cplx(2.0, 0.0));
    est.sounded_at = 0;
    auto rng = make_rng(1);
    const EqualizedSymbols eq = equalize_and_demap(received, est, grid, cfg, rng);
    CHECK(eq.bits == tx_bits);
}

TEST_CASE("oracle CSI over a frequency-selective channel gives zero errors") {
    const LinkConfig cfg = config16();
    std::vector<std::uint8_t> tx_bits;
    const OfdmGrid grid = data_grid(cfg, 3, 47, &tx_bits);

    ChannelProfile profile;
    profile.tap_delays = {0, 3};
    profile.tap_powers = {0.7, 0.3};
    const ChannelState state = init_channel(profile, 77);
    const auto h = true_frequency_response(state, profile, 16);

    std::vector<cplx> received(grid.symbols.size());
    for (int t = 0; t < grid.num_symbols; ++t) {
        for (int k = 0; k < 16; ++k) {
            received[t * 16 + k] = h[k] * grid.at(t, k);
        }
    }
    ChannelEstimate est;
    est.gains = h;
    est.sounded_at = 0;
    auto rng = make_rng(1);
    const EqualizedSymbols eq = equalize_and_demap(received, est, grid, cfg, rng);
    CHECK(eq.bits == tx_bits);
    CHECK(eq.erasures == 0);
}

TEST_CASE("vanishing estimate gains become counted erasures, not NaNs") {
    const LinkConfig cfg = config16();
    const OfdmGrid grid = data_grid(cfg, 1, 53);

    ChannelEstimate est;
    est.gains.assign(16, cplx(1.0, 0.0));
    est.gains[3] = cplx{};  // dead subcarrier
    est.sounded_at = 0;
    auto rng = make_rng(5);
    const EqualizedSymbols eq = equalize_and_demap(grid.symbols, est, grid, cfg, rng);
    CHECK(eq.erasures == 1);
    for (const auto& v : eq.values) {
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
    }
    // Deterministic under the seeded RNG.
    auto rng2 = make_rng(5);
    const EqualizedSymbols eq2 = equalize_and_demap(grid.symbols, est, grid, cfg, rng2);
    CHECK(eq.bits == eq2.bits);
}

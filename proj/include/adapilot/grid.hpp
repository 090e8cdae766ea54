#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace adapilot {

using cplx = std::complex<double>;

enum class CellRole : std::uint8_t { Data, Pilot, Null };

enum class PilotArrangement { BlockType, CombType };

// Where pilots live on the time-frequency lattice. Block-type devotes whole
// OFDM symbols to pilots every `time_period` symbols; comb-type puts pilot
// tones every `freq_spacing` subcarriers in every symbol.
struct PilotLayout {
    PilotArrangement arrangement = PilotArrangement::BlockType;
    int time_period = 1;
    int freq_spacing = 1;

    // Throws LayoutInvalidError on violated constraints
    // (block => freq_spacing == 1, comb => time_period == 1).
    void validate() const;
};

// Global link parameters shared by every module.
struct LinkConfig {
    int num_subcarriers = 64;              // N, power of two, >= 8
    int cp_length = 8;                     // samples
    double subcarrier_bandwidth_hz = 15625.0;
    double symbol_time_s = 6.4e-5;         // useful (non-CP) symbol duration
    int modulation_order = 2;              // bits per cell: 2 = QPSK, 4 = 16-QAM
    int base_pilot_period = 2;             // n, symbols between soundings at pattern 1
    int pilots_per_sounding = 64;          // L, pilot cells per sounding
    int pilot_subcarrier_spacing = 1;      // comb-type tone spacing
    double snr_db = 20.0;                  // may be +inf for a noiseless link
    double ber_threshold = 1e-2;           // reset threshold on windowed BER
    long ber_window_bits = 10000;          // sliding-window size in data bits
    int feedback_delay = 0;                // symbols of latency on feedback messages
    std::uint64_t rng_seed = 1;

    int bits_per_cell() const { return modulation_order; }
    void validate() const;  // throws ConfigError
};

// Time-major lattice of complex cells plus a role tag per cell.
struct OfdmGrid {
    int num_symbols = 0;
    int num_subcarriers = 0;
    std::vector<cplx> symbols;        // [t * num_subcarriers + k]
    std::vector<CellRole> roles;

    cplx& at(int t, int k) { return symbols[static_cast<std::size_t>(t) * num_subcarriers + k]; }
    const cplx& at(int t, int k) const {
        return symbols[static_cast<std::size_t>(t) * num_subcarriers + k];
    }
    CellRole& role(int t, int k) { return roles[static_cast<std::size_t>(t) * num_subcarriers + k]; }
    CellRole role(int t, int k) const {
        return roles[static_cast<std::size_t>(t) * num_subcarriers + k];
    }
    long count_role(CellRole r) const;
};

// Unit-magnitude QPSK pilot for a subcarrier. Depends only on (seed, k), so
// every sounding reuses the same pilot vector and both ends can regenerate it.
cplx pilot_value(std::uint64_t seed, int subcarrier);

struct GridBuild {
    OfdmGrid grid;
    std::size_t bits_consumed = 0;
};

// Lays pilots out per `layout`, maps `data_bits` onto the remaining cells.
// Throws InsufficientBitsError when the stream underruns and
// LayoutInvalidError when the layout violates its invariants.
GridBuild build_grid(const LinkConfig& config, const PilotLayout& layout, int num_symbols,
                     std::span<const std::uint8_t> data_bits);

// (# data cells) / (# data + # pilot cells).
double data_rate_fraction(const OfdmGrid& grid);

// Debug dump, one `t,k,role,re,im` row per cell.
void dump_grid_csv(const OfdmGrid& grid, std::ostream& out);

}  // namespace adapilot

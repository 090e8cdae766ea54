#include "adapilot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "adapilot/error.hpp"
#include "adapilot/phy.hpp"
#include "adapilot/rng.hpp"

namespace adapilot {

void PilotLayout::validate() const {
    if (time_period < 1) {
        throw LayoutInvalidError("pilot layout: time_period must be >= 1");
    }
    if (freq_spacing < 1) {
        throw LayoutInvalidError("pilot layout: freq_spacing must be >= 1");
    }
    if (arrangement == PilotArrangement::BlockType && freq_spacing != 1) {
        throw LayoutInvalidError("block-type layout requires freq_spacing == 1");
    }
    if (arrangement == PilotArrangement::CombType && time_period != 1) {
        throw LayoutInvalidError("comb-type layout requires time_period == 1");
    }
}

void LinkConfig::validate() const {
    const bool power_of_two = num_subcarriers > 0 && (num_subcarriers & (num_subcarriers - 1)) == 0;
    if (!power_of_two || num_subcarriers < 8) {
        throw ConfigError("num_subcarriers must be a power of two >= 8");
    }
    if (cp_length < 0) {
        throw ConfigError("cp_length must be >= 0");
    }
    if (subcarrier_bandwidth_hz <= 0.0 || symbol_time_s <= 0.0) {
        throw ConfigError("subcarrier_bandwidth_hz and symbol_time_s must be positive");
    }
    if (modulation_order != 2 && modulation_order != 4) {
        throw ConfigError("modulation_order must be 2 (QPSK) or 4 (16-QAM)");
    }
    if (base_pilot_period < 1) {
        throw ConfigError("base_pilot_period must be >= 1");
    }
    if (pilots_per_sounding < 1) {
        throw ConfigError("pilots_per_sounding must be >= 1");
    }
    if (pilot_subcarrier_spacing < 1 || pilot_subcarrier_spacing > num_subcarriers) {
        throw ConfigError("pilot_subcarrier_spacing out of range");
    }
    if (!(ber_threshold > 0.0 && ber_threshold < 0.5)) {
        throw ConfigError("ber_threshold must lie in (0, 0.5)");
    }
    if (ber_window_bits < 1) {
        throw ConfigError("ber_window_bits must be >= 1");
    }
    if (feedback_delay < 0) {
        throw ConfigError("feedback_delay must be >= 0");
    }
}

long OfdmGrid::count_role(CellRole r) const {
    return std::count(roles.begin(), roles.end(), r);
}

cplx pilot_value(std::uint64_t seed, int subcarrier) {
    // Two hashed bits select one of the four unit-magnitude QPSK phases.
    const std::uint64_t h = mix_seed(seed, 0x70696c6fULL, static_cast<std::uint64_t>(subcarrier));
    const int quadrant = static_cast<int>(h & 3);
    const double angle = std::numbers::pi * (0.25 + 0.5 * quadrant);
    return cplx(std::cos(angle), std::sin(angle));
}

namespace {

bool is_pilot_cell(const PilotLayout& layout, int t, int k) {
    if (layout.arrangement == PilotArrangement::BlockType) {
        return t % layout.time_period == 0;
    }
    return k % layout.freq_spacing == 0;
}

}  // namespace

GridBuild build_grid(const LinkConfig& config, const PilotLayout& layout, int num_symbols,
                     std::span<const std::uint8_t> data_bits) {
    config.validate();
    layout.validate();
    if (num_symbols < 0) {
        throw ConfigError("num_symbols must be >= 0");
    }

    const int n_sub = config.num_subcarriers;
    GridBuild out;
    out.grid.num_symbols = num_symbols;
    out.grid.num_subcarriers = n_sub;
    out.grid.symbols.assign(static_cast<std::size_t>(num_symbols) * n_sub, cplx{});
    out.grid.roles.assign(static_cast<std::size_t>(num_symbols) * n_sub, CellRole::Data);

    const int bits_per_cell = config.bits_per_cell();
    std::size_t bit_pos = 0;
    for (int t = 0; t < num_symbols; ++t) {
        for (int k = 0; k < n_sub; ++k) {
            if (is_pilot_cell(layout, t, k)) {
                out.grid.role(t, k) = CellRole::Pilot;
                out.grid.at(t, k) = pilot_value(config.rng_seed, k);
            } else {
                if (bit_pos + bits_per_cell > data_bits.size()) {
                    throw InsufficientBitsError("bit stream underrun while filling data cells");
                }
                out.grid.at(t, k) =
                    map_bits(data_bits.subspan(bit_pos, bits_per_cell), config.modulation_order);
                bit_pos += bits_per_cell;
            }
        }
    }
    out.bits_consumed = bit_pos;
    return out;
}

double data_rate_fraction(const OfdmGrid& grid) {
    const long data = grid.count_role(CellRole::Data);
    const long pilot = grid.count_role(CellRole::Pilot);
    const long total = data + pilot;
    if (total == 0) {
        throw ConfigError("data_rate_fraction: grid holds no data or pilot cells");
    }
    return static_cast<double>(data) / static_cast<double>(total);
}

void dump_grid_csv(const OfdmGrid& grid, std::ostream& out) {
    out << "t,k,role,re,im\n";
    char buf[96];
    for (int t = 0; t < grid.num_symbols; ++t) {
        for (int k = 0; k < grid.num_subcarriers; ++k) {
            const char* role = "data";
            switch (grid.role(t, k)) {
                case CellRole::Pilot: role = "pilot"; break;
                case CellRole::Null: role = "null"; break;
                default: break;
            }
            const cplx v = grid.at(t, k);
            std::snprintf(buf, sizeof(buf), "%d,%d,%s,%.10g,%.10g\n", t, k, role, v.real(),
                          v.imag());
            out << buf;
        }
    }
}

}  // namespace adapilot

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "adapilot/channel.hpp"
#include "adapilot/controller.hpp"
#include "adapilot/estimation.hpp"
#include "adapilot/grid.hpp"

namespace adapilot {

enum class StationarityMode { GaussMarkov };

// How the pilot schedule is driven: a fixed pattern index, or the adaptive
// controller with a boundary set.
struct RunMode {
    bool adaptive = true;
    int fixed_pattern_index = 0;
    BoundarySet boundaries = BoundarySet::table(4);

    static RunMode fixed(int pattern_index) {
        RunMode m;
        m.adaptive = false;
        m.fixed_pattern_index = pattern_index;
        return m;
    }
    static RunMode adaptive_mode(const BoundarySet& b) {
        RunMode m;
        m.adaptive = true;
        m.boundaries = b;
        return m;
    }
};

struct RunMetrics {
    double snr_db = 0.0;
    long total_bits = 0;
    long bit_errors = 0;
    double ber = 0.0;                      // bit_errors / total_bits, 0 when no bits
    double data_rate_fraction = 0.0;       // data cells / (data + pilot cells)
    std::array<double, 4> pattern_occupancy{};  // fraction of soundings per pattern
    long resets = 0;
    std::uint64_t seed = 0;
    long soundings = 0;
    long erasures = 0;
};

struct TraceRow {
    long t = 0;
    std::string event;                    // SOUND, DATA or RESET
    std::optional<double> correlation;
    int pattern = 1;
    long period = 1;
    std::optional<double> windowed_ber;
    std::optional<double> error;
};

// Scripted mid-run perturbations (used by tests to force channel jumps).
struct RunScript {
    std::optional<long> switch_profile_at;
    ChannelProfile switch_profile;
};

// Simulates one link for num_symbols OFDM symbols. Fully deterministic in
// (config, profile, mode, num_symbols, seed).
RunMetrics run_link(const LinkConfig& config, const ChannelProfile& profile, const RunMode& mode,
                    long num_symbols, std::uint64_t seed, std::vector<TraceRow>* trace = nullptr,
                    const RunScript* script = nullptr);

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path);

enum class StudyKind { AdaptiveVsFixed, BoundarySweep, ModelSweep };

struct StudyConfig {
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
    long symbols_per_point = 20000;
    int trials = 20;
    int boundary_set_id = 4;               // Table of boundary sets, 1..5
    std::optional<BoundarySet> explicit_boundaries;
    int channel_model_id = 2;              // stationarity models, 1..5
    std::optional<ChannelProfile> explicit_profile;

    BoundarySet boundaries() const;
    ChannelProfile profile() const;
    void validate(const LinkConfig& link) const;
};

struct ResultRow {
    std::string study;
    std::string mode;        // "adaptive" or "fixed_p<1..4>"
    double snr_db = 0.0;
    int model = 0;           // stationarity model id, 0 = explicit profile
    int boundary_set = 0;    // boundary set id, 0 = explicit set
    int trial = 0;
    double ber = 0.0;
    double data_rate = 0.0;
    long resets = 0;
    std::array<double, 4> occ{};
    std::uint64_t seed = 0;
};

using ResultTable = std::vector<ResultRow>;

// Study 1: adaptive vs fixed pattern 1 on shared realizations per SNR/trial.
ResultTable study_adaptive_vs_fixed(const LinkConfig& link, const StudyConfig& cfg,
                                    std::uint64_t master_seed);
// Study 2: adaptive under each of the five boundary sets, shared realizations.
ResultTable study_boundaries(const LinkConfig& link, const StudyConfig& cfg,
                             std::uint64_t master_seed);
// Study 3: adaptive (configured boundary set) across stationarity models 1..5.
ResultTable study_models(const LinkConfig& link, const StudyConfig& cfg,
                         std::uint64_t master_seed);

// Writes <study>.csv plus BER/data-rate SVG charts and a resolved-settings
// sidecar into out_dir. Throws IoError on failure, ConfigError on an empty
// table.
void emit_results(const ResultTable& table, const std::string& out_dir,
                  const std::string& study_name, const std::string& settings_echo);

std::string results_csv_string(const ResultTable& table);
ResultTable parse_results_csv(const std::string& path);

}  // namespace adapilot

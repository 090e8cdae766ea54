// Command-line front end: single-link runs and the three study sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adapilot/config.hpp"
#include "adapilot/error.hpp"
#include "adapilot/harness.hpp"

namespace {

using namespace adapilot;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<double> snr;
    std::optional<int> model;
    std::optional<int> boundary_set;
    std::optional<long> symbols;
    std::optional<int> trials;
    std::string stationarity_mode = "gauss-markov";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Config file (key = value lines)");
    cmd->add_option("--seed", opt.seed, "Master RNG seed");
    cmd->add_option("--out-dir", opt.out_dir, "Output directory for CSV/SVG results");
    cmd->add_option("--snr", opt.snr, "SNR grid in dB (repeat or comma-separate)")
        ->delimiter(',');
    cmd->add_option("--model", opt.model, "Channel stationarity model 1..5")
        ->check(CLI::Range(1, 5));
    cmd->add_option("--boundary-set", opt.boundary_set, "Boundary set 1..5")
        ->check(CLI::Range(1, 5));
    cmd->add_option("--symbols", opt.symbols, "OFDM symbols per run/point");
    cmd->add_option("--trials", opt.trials, "Trials per SNR point");
    cmd->add_option("--stationarity-mode", opt.stationarity_mode,
                    "Channel evolution model (gauss-markov)")
        ->check(CLI::IsMember({"gauss-markov"}));
}

Settings resolve_settings(const CommonOptions& opt) {
    Settings s = opt.config_path.empty() ? Settings{} : parse_config_file(opt.config_path);
    if (opt.seed) {
        s.master_seed = *opt.seed;
        s.link.rng_seed = *opt.seed;
    }
    if (!opt.snr.empty()) {
        s.study.snr_grid_db = opt.snr;
        s.link.snr_db = opt.snr.front();
    }
    if (opt.model) {
        s.study.channel_model_id = *opt.model;
        s.study.explicit_profile.reset();
    }
    if (opt.boundary_set) {
        s.study.boundary_set_id = *opt.boundary_set;
        s.study.explicit_boundaries.reset();
    }
    if (opt.symbols) {
        s.study.symbols_per_point = *opt.symbols;
    }
    if (opt.trials) {
        s.study.trials = *opt.trials;
    }
    return s;
}

void print_metrics(const RunMetrics& m) {
    std::printf("snr_db            %.10g\n", m.snr_db);
    std::printf("total_bits        %ld\n", m.total_bits);
    std::printf("bit_errors        %ld\n", m.bit_errors);
    std::printf("ber               %.10g\n", m.ber);
    std::printf("data_rate         %.10g\n", m.data_rate_fraction);
    std::printf("soundings         %ld\n", m.soundings);
    std::printf("resets            %ld\n", m.resets);
    std::printf("erasures          %ld\n", m.erasures);
    std::printf("occupancy         p1=%.4g p2=%.4g p3=%.4g p4=%.4g\n", m.pattern_occupancy[0],
                m.pattern_occupancy[1], m.pattern_occupancy[2], m.pattern_occupancy[3]);
    std::printf("seed              %llu\n", static_cast<unsigned long long>(m.seed));
}

int run_study(const std::string& name, const CommonOptions& opt,
              ResultTable (*study)(const LinkConfig&, const StudyConfig&, std::uint64_t)) {
    const Settings s = resolve_settings(opt);
    const ResultTable table = study(s.link, s.study, s.master_seed);
    const std::string out_dir = opt.out_dir.empty() ? "results" : opt.out_dir;
    emit_results(table, out_dir, name, settings_echo(s));
    std::printf("wrote %zu rows to %s/%s.csv\n", table.size(), out_dir.c_str(), name.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adapilot: OFDM link simulator with adaptive pilot-pattern channel estimation"};
    app.require_subcommand(1);

    CommonOptions run_opt;
    bool adaptive = false;
    std::optional<int> fixed_pattern;
    std::string trace_path;
    std::string grid_dump_path;
    auto* run_cmd = app.add_subcommand("run", "Simulate a single link and print its metrics");
    add_common(run_cmd, run_opt);
    run_cmd->add_flag("--adaptive", adaptive, "Drive the pilot schedule adaptively");
    run_cmd->add_option("--fixed-pattern", fixed_pattern, "Fixed pilot pattern 1..4")
        ->check(CLI::Range(1, 4));
    run_cmd->add_option("--trace", trace_path, "Write the controller decision trace CSV here");
    run_cmd->add_option("--dump-grid", grid_dump_path,
                        "Write a small all-pattern demo grid as CSV (debug)");

    CommonOptions sweep_opt;
    auto* sweep_cmd =
        app.add_subcommand("sweep-snr", "Adaptive vs fixed-pattern-1 sweep over the SNR grid");
    add_common(sweep_cmd, sweep_opt);

    CommonOptions bounds_opt;
    auto* bounds_cmd =
        app.add_subcommand("study-boundaries", "Adaptive sweep under boundary sets 1..5");
    add_common(bounds_cmd, bounds_opt);

    CommonOptions models_opt;
    auto* models_cmd =
        app.add_subcommand("study-models", "Adaptive sweep across stationarity models 1..5");
    add_common(models_cmd, models_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const Settings s = resolve_settings(run_opt);
            if (adaptive && fixed_pattern) {
                throw ConfigError("choose either --adaptive or --fixed-pattern");
            }
            const RunMode mode = fixed_pattern ? RunMode::fixed(*fixed_pattern - 1)
                                               : RunMode::adaptive_mode(s.study.boundaries());
            LinkConfig link = s.link;
            if (!run_opt.snr.empty()) {
                link.snr_db = run_opt.snr.front();
            }
            std::vector<TraceRow> trace;
            const RunMetrics metrics =
                run_link(link, s.study.profile(), mode, s.study.symbols_per_point, s.master_seed,
                         trace_path.empty() ? nullptr : &trace);
            print_metrics(metrics);
            if (!trace_path.empty()) {
                write_trace_csv(trace, trace_path);
                std::printf("trace             %s\n", trace_path.c_str());
            }
            if (!grid_dump_path.empty()) {
                PilotLayout layout;
                layout.arrangement = PilotArrangement::BlockType;
                layout.time_period = link.base_pilot_period;
                std::vector<std::uint8_t> bits(
                    static_cast<std::size_t>(link.num_subcarriers) * 16 * link.bits_per_cell(), 0);
                for (std::size_t i = 0; i < bits.size(); ++i) {
                    bits[i] = static_cast<std::uint8_t>((i * 2654435761u >> 7) & 1);
                }
                const GridBuild demo = build_grid(link, layout, 16, bits);
                std::ofstream out(grid_dump_path);
                if (!out) {
                    throw IoError("cannot open grid dump file: " + grid_dump_path);
                }
                dump_grid_csv(demo.grid, out);
                std::printf("grid dump         %s\n", grid_dump_path.c_str());
            }
            if (!run_opt.out_dir.empty()) {
                ResultTable table;
                ResultRow row;
                row.study = "run";
                row.mode = fixed_pattern ? "fixed_p" + std::to_string(*fixed_pattern) : "adaptive";
                row.snr_db = metrics.snr_db;
                row.model = s.study.explicit_profile ? 0 : s.study.channel_model_id;
                row.boundary_set = s.study.explicit_boundaries ? 0 : s.study.boundary_set_id;
                row.trial = 0;
                row.ber = metrics.ber;
                row.data_rate = metrics.data_rate_fraction;
                row.resets = metrics.resets;
                row.occ = metrics.pattern_occupancy;
                row.seed = metrics.seed;
                table.push_back(row);
                emit_results(table, run_opt.out_dir, "run", settings_echo(s));
            }
            return 0;
        }
        if (sweep_cmd->parsed()) {
            return run_study("adaptive_vs_fixed", sweep_opt, &study_adaptive_vs_fixed);
        }
        if (bounds_cmd->parsed()) {
            return run_study("boundaries", bounds_opt, &study_boundaries);
        }
        if (models_cmd->parsed()) {
            return run_study("models", models_opt, &study_models);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

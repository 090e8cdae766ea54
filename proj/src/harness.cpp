#include "adapilot/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "adapilot/error.hpp"
#include "adapilot/phy.hpp"
#include "adapilot/rng.hpp"
#include "adapilot/svg.hpp"

namespace adapilot {

namespace {

std::vector<int> sounding_pilot_indices(const LinkConfig& config) {
    const int n = config.num_subcarriers;
    const int count = std::min(config.pilots_per_sounding, n);
    std::vector<int> indices;
    indices.reserve(count);
    for (int j = 0; j < count; ++j) {
        indices.push_back(static_cast<int>(static_cast<long>(j) * n / count));
    }
    return indices;
}

void fill_random_bits(std::vector<std::uint8_t>& bits, std::mt19937_64& rng) {
    std::uint64_t word = 0;
    int avail = 0;
    for (auto& b : bits) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        b = static_cast<std::uint8_t>(word & 1);
        word >>= 1;
        --avail;
    }
}

}  // namespace

RunMetrics run_link(const LinkConfig& config, const ChannelProfile& profile, const RunMode& mode,
                    long num_symbols, std::uint64_t seed, std::vector<TraceRow>* trace,
                    const RunScript* script) {
    config.validate();
    profile.validate();
    if (profile.max_delay() >= config.cp_length && profile.max_delay() > 0) {
        throw ConfigError("channel max delay spread must fit inside the cyclic prefix");
    }
    if (!mode.adaptive && (mode.fixed_pattern_index < 0 || mode.fixed_pattern_index > 3)) {
        throw ConfigError("fixed pattern index must lie in 0..3");
    }

    const int n_sub = config.num_subcarriers;
    const int bits_per_cell = config.bits_per_cell();
    const std::vector<int> pilot_indices = sounding_pilot_indices(config);
    std::vector<cplx> known_pilots(pilot_indices.size());
    for (std::size_t i = 0; i < pilot_indices.size(); ++i) {
        known_pilots[i] = pilot_value(config.rng_seed, pilot_indices[i]);
    }

    auto channel_rng = make_rng(mix_seed(seed, stream::kChannel));
    auto noise_rng = make_rng(mix_seed(seed, stream::kNoise));
    auto data_rng = make_rng(mix_seed(seed, stream::kDataBits));
    auto erasure_rng = make_rng(mix_seed(seed, stream::kErasure));

    Controller controller(config.base_pilot_period, config.pilots_per_sounding,
                          config.ber_threshold, config.ber_window_bits, mode.boundaries,
                          config.feedback_delay);
    const long fixed_period =
        mode.adaptive ? 0
                      : make_pattern(mode.fixed_pattern_index, config.base_pilot_period,
                                     config.pilots_per_sounding)
                            .period;

    ChannelProfile active_profile = profile;
    ChannelState channel_state;
    ChannelEstimate estimate;

    RunMetrics metrics;
    metrics.snr_db = config.snr_db;
    metrics.seed = seed;
    std::array<long, 4> occupancy_counts{};
    long data_cells_total = 0;
    long pilot_cells_total = 0;

    OfdmGrid symbol_grid;
    symbol_grid.num_symbols = 1;
    symbol_grid.num_subcarriers = n_sub;
    symbol_grid.symbols.assign(n_sub, cplx{});
    symbol_grid.roles.assign(n_sub, CellRole::Data);

    std::vector<std::uint8_t> tx_bits;
    std::vector<cplx> received_pilots(pilot_indices.size());

    for (long t = 0; t < num_symbols; ++t) {
        if (script && script->switch_profile_at && t == *script->switch_profile_at) {
            active_profile = script->switch_profile;
            active_profile.validate();
        }

        if (t == 0) {
            channel_state = init_channel(active_profile, channel_rng);
        } else {
            channel_state = step_channel(channel_state, active_profile, channel_rng);
        }

        const bool sounding =
            mode.adaptive ? controller.sounding_due() : (t % fixed_period == 0);

        // Assemble this symbol's cells.
        std::fill(symbol_grid.roles.begin(), symbol_grid.roles.end(), CellRole::Data);
        if (sounding) {
            for (int idx : pilot_indices) {
                symbol_grid.roles[idx] = CellRole::Pilot;
            }
        }
        long data_cells = 0;
        for (int k = 0; k < n_sub; ++k) {
            if (symbol_grid.roles[k] == CellRole::Data) {
                ++data_cells;
            }
        }
        tx_bits.resize(static_cast<std::size_t>(data_cells) * bits_per_cell);
        fill_random_bits(tx_bits, data_rng);

        std::size_t bit_pos = 0;
        for (int k = 0; k < n_sub; ++k) {
            if (symbol_grid.roles[k] == CellRole::Pilot) {
                symbol_grid.symbols[k] = pilot_value(config.rng_seed, k);
            } else {
                symbol_grid.symbols[k] = map_bits(
                    std::span(tx_bits).subspan(bit_pos, bits_per_cell), config.modulation_order);
                bit_pos += bits_per_cell;
            }
        }
        data_cells_total += data_cells;
        pilot_cells_total += n_sub - data_cells;

        // Through the air.
        const TimeDomainSignal tx = modulate(symbol_grid, config);
        const TimeDomainSignal rx = apply_channel(tx, std::span(&channel_state, 1), active_profile,
                                                  config.snr_db, noise_rng);
        const std::vector<cplx> received = demodulate(rx, config);

        if (sounding) {
            ++metrics.soundings;
            for (std::size_t i = 0; i < pilot_indices.size(); ++i) {
                received_pilots[i] = received[pilot_indices[i]];
            }
            estimate = ls_estimate(received_pilots, known_pilots, pilot_indices, n_sub);
            estimate.sounded_at = t;

            int selected_index = mode.adaptive ? 0 : mode.fixed_pattern_index;
            std::optional<double> correlation;
            long period = fixed_period;
            if (mode.adaptive) {
                const SoundingOutcome outcome = controller.on_sounding(received_pilots);
                selected_index = outcome.pattern.index;
                correlation = outcome.correlation;
                period = outcome.pattern.period;
            }
            ++occupancy_counts[selected_index];
            if (trace) {
                TraceRow row;
                row.t = t;
                row.event = "SOUND";
                row.correlation = correlation;
                row.pattern = selected_index + 1;
                row.period = period;
                trace->push_back(row);
            }
        }
        estimate.age = t - estimate.sounded_at;

        if (data_cells > 0) {
            const EqualizedSymbols eq =
                equalize_and_demap(received, estimate, symbol_grid, config, erasure_rng);
            long errors = 0;
            for (std::size_t i = 0; i < tx_bits.size(); ++i) {
                errors += tx_bits[i] != eq.bits[i] ? 1 : 0;
            }
            metrics.total_bits += static_cast<long>(tx_bits.size());
            metrics.bit_errors += errors;
            metrics.erasures += eq.erasures;

            if (mode.adaptive && !sounding) {
                const DataSymbolOutcome outcome =
                    controller.on_data_symbol(errors, static_cast<long>(tx_bits.size()));
                if (trace) {
                    TraceRow row;
                    row.t = t;
                    row.event =
                        outcome.action == ControlAction::ResetToPattern1 ? "RESET" : "DATA";
                    row.pattern = controller.current_pattern().number();
                    row.period = controller.current_pattern().period;
                    row.windowed_ber = outcome.windowed_ber;
                    row.error = outcome.error;
                    trace->push_back(row);
                }
            }
        }
    }

    metrics.resets = controller.resets();
    metrics.ber = metrics.total_bits > 0
                      ? static_cast<double>(metrics.bit_errors) / metrics.total_bits
                      : 0.0;
    const long lattice_cells = data_cells_total + pilot_cells_total;
    metrics.data_rate_fraction =
        lattice_cells > 0 ? static_cast<double>(data_cells_total) / lattice_cells : 0.0;
    if (metrics.soundings > 0) {
        for (int i = 0; i < 4; ++i) {
            metrics.pattern_occupancy[i] =
                static_cast<double>(occupancy_counts[i]) / metrics.soundings;
        }
    }
    return metrics;
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open trace file: " + path);
    }
    out << "t,event,R,pattern,period,windowed_BER,e\n";
    char buf[192];
    for (const auto& row : trace) {
        std::string r = row.correlation ? [&] {
            std::snprintf(buf, sizeof(buf), "%.10g", *row.correlation);
            return std::string(buf);
        }() : std::string();
        std::string wb = row.windowed_ber ? [&] {
            std::snprintf(buf, sizeof(buf), "%.10g", *row.windowed_ber);
            return std::string(buf);
        }() : std::string();
        std::string e = row.error ? [&] {
            std::snprintf(buf, sizeof(buf), "%.10g", *row.error);
            return std::string(buf);
        }() : std::string();
        out << row.t << ',' << row.event << ',' << r << ',' << row.pattern << ',' << row.period
            << ',' << wb << ',' << e << '\n';
    }
}

BoundarySet StudyConfig::boundaries() const {
    if (explicit_boundaries) {
        return *explicit_boundaries;
    }
    return BoundarySet::table(boundary_set_id);
}

ChannelProfile StudyConfig::profile() const {
    if (explicit_profile) {
        return *explicit_profile;
    }
    return ChannelProfile::stationarity_model(channel_model_id);
}

void StudyConfig::validate(const LinkConfig& link) const {
    if (trials < 1) {
        throw ConfigError("study: trials must be >= 1");
    }
    if (snr_grid_db.empty()) {
        throw ConfigError("study: SNR grid must be non-empty");
    }
    const long reach = 10L * 8L * link.base_pilot_period;
    if (symbols_per_point < reach) {
        throw ConfigError("study: symbols_per_point must be >= 10 * (8n) so the sparsest "
                          "pattern is reachable");
    }
    if (!explicit_boundaries) {
        BoundarySet::table(boundary_set_id);
    } else {
        explicit_boundaries->validate();
    }
    if (!explicit_profile) {
        ChannelProfile::stationarity_model(channel_model_id);
    } else {
        explicit_profile->validate();
    }
}

namespace {

// Runs `total` jobs on a small worker pool; results keyed by job index so
// aggregation is independent of scheduling order.
void parallel_jobs(std::size_t total, const std::function<void(std::size_t)>& job) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, total));
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) {
            job(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) {
                    return;
                }
                job(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

ResultRow make_row(const char* study, std::string mode, double snr_db, int model,
                   int boundary_set, int trial, const RunMetrics& m) {
    ResultRow row;
    row.study = study;
    row.mode = std::move(mode);
    row.snr_db = snr_db;
    row.model = model;
    row.boundary_set = boundary_set;
    row.trial = trial;
    row.ber = m.ber;
    row.data_rate = m.data_rate_fraction;
    row.resets = m.resets;
    row.occ = m.pattern_occupancy;
    row.seed = m.seed;
    return row;
}

}  // namespace

ResultTable study_adaptive_vs_fixed(const LinkConfig& link, const StudyConfig& cfg,
                                    std::uint64_t master_seed) {
    cfg.validate(link);
    const ChannelProfile profile = cfg.profile();
    const BoundarySet boundaries = cfg.boundaries();
    const int model = cfg.explicit_profile ? 0 : cfg.channel_model_id;
    const int bset = cfg.explicit_boundaries ? 0 : cfg.boundary_set_id;

    const std::size_t points = cfg.snr_grid_db.size() * static_cast<std::size_t>(cfg.trials);
    ResultTable table(points * 2);
    parallel_jobs(points, [&](std::size_t job) {
        const std::size_t s = job / cfg.trials;
        const int trial = static_cast<int>(job % cfg.trials);
        LinkConfig cfg_point = link;
        cfg_point.snr_db = cfg.snr_grid_db[s];
        const std::uint64_t seed = mix_seed(master_seed, s, static_cast<std::uint64_t>(trial));

        const RunMetrics fixed = run_link(cfg_point, profile, RunMode::fixed(0),
                                          cfg.symbols_per_point, seed);
        const RunMetrics adaptive = run_link(cfg_point, profile, RunMode::adaptive_mode(boundaries),
                                             cfg.symbols_per_point, seed);
        table[job * 2] = make_row("adaptive_vs_fixed", "fixed_p1", cfg_point.snr_db, model, bset,
                                  trial, fixed);
        table[job * 2 + 1] = make_row("adaptive_vs_fixed", "adaptive", cfg_point.snr_db, model,
                                      bset, trial, adaptive);
    });
    return table;
}

ResultTable study_boundaries(const LinkConfig& link, const StudyConfig& cfg,
                             std::uint64_t master_seed) {
    cfg.validate(link);
    const ChannelProfile profile = cfg.profile();
    const int model = cfg.explicit_profile ? 0 : cfg.channel_model_id;

    const std::size_t points = cfg.snr_grid_db.size() * static_cast<std::size_t>(cfg.trials);
    ResultTable table(points * 5);
    parallel_jobs(points * 5, [&](std::size_t job) {
        const int set_id = static_cast<int>(job / points) + 1;
        const std::size_t point = job % points;
        const std::size_t s = point / cfg.trials;
        const int trial = static_cast<int>(point % cfg.trials);
        LinkConfig cfg_point = link;
        cfg_point.snr_db = cfg.snr_grid_db[s];
        const std::uint64_t seed = mix_seed(master_seed, s, static_cast<std::uint64_t>(trial));

        const RunMetrics m = run_link(cfg_point, profile,
                                      RunMode::adaptive_mode(BoundarySet::table(set_id)),
                                      cfg.symbols_per_point, seed);
        table[job] = make_row("boundaries", "adaptive", cfg_point.snr_db, model, set_id, trial, m);
    });
    return table;
}

ResultTable study_models(const LinkConfig& link, const StudyConfig& cfg,
                         std::uint64_t master_seed) {
    cfg.validate(link);
    const BoundarySet boundaries = cfg.boundaries();
    const int bset = cfg.explicit_boundaries ? 0 : cfg.boundary_set_id;

    const std::size_t points = cfg.snr_grid_db.size() * static_cast<std::size_t>(cfg.trials);
    ResultTable table(points * 5);
    parallel_jobs(points * 5, [&](std::size_t job) {
        const int model_id = static_cast<int>(job / points) + 1;
        const std::size_t point = job % points;
        const std::size_t s = point / cfg.trials;
        const int trial = static_cast<int>(point % cfg.trials);
        LinkConfig cfg_point = link;
        cfg_point.snr_db = cfg.snr_grid_db[s];
        const std::uint64_t seed = mix_seed(master_seed, s, static_cast<std::uint64_t>(trial));

        const RunMetrics m =
            run_link(cfg_point, ChannelProfile::stationarity_model(model_id),
                     RunMode::adaptive_mode(boundaries), cfg.symbols_per_point, seed);
        table[job] = make_row("models", "adaptive", cfg_point.snr_db, model_id, bset, trial, m);
    });
    return table;
}

std::string results_csv_string(const ResultTable& table) {
    std::ostringstream out;
    out << "study,mode,snr_db,model,boundary_set,trial,ber,data_rate,resets,"
           "occ_p1,occ_p2,occ_p3,occ_p4,seed\n";
    char buf[384];
    for (const auto& r : table) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%s,%.10g,%d,%d,%d,%.10g,%.10g,%ld,%.10g,%.10g,%.10g,%.10g,%llu\n",
                      r.study.c_str(), r.mode.c_str(), r.snr_db, r.model, r.boundary_set, r.trial,
                      r.ber, r.data_rate, r.resets, r.occ[0], r.occ[1], r.occ[2], r.occ[3],
                      static_cast<unsigned long long>(r.seed));
        out << buf;
    }
    return out.str();
}

ResultTable parse_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open results file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("results file is empty: " + path);
    }
    ResultTable table;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 14) {
            throw IoError("malformed results row in " + path);
        }
        ResultRow r;
        r.study = fields[0];
        r.mode = fields[1];
        r.snr_db = std::stod(fields[2]);
        r.model = std::stoi(fields[3]);
        r.boundary_set = std::stoi(fields[4]);
        r.trial = std::stoi(fields[5]);
        r.ber = std::stod(fields[6]);
        r.data_rate = std::stod(fields[7]);
        r.resets = std::stol(fields[8]);
        for (int i = 0; i < 4; ++i) {
            r.occ[i] = std::stod(fields[9 + i]);
        }
        r.seed = std::stoull(fields[13]);
        table.push_back(std::move(r));
    }
    return table;
}

namespace {

// Key used to group result rows into chart curves.
std::string curve_label(const ResultRow& r) {
    if (r.study == "boundaries") {
        return "set " + std::to_string(r.boundary_set);
    }
    if (r.study == "models") {
        return "model " + std::to_string(r.model);
    }
    return r.mode;
}

std::vector<svg::Series> build_series(const ResultTable& table, bool use_ber) {
    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const auto& r : table) {
        auto& cell = acc[curve_label(r)][r.snr_db];
        cell.first += use_ber ? r.ber : r.data_rate;
        cell.second += 1;
    }
    std::vector<svg::Series> series;
    for (const auto& [label, pts] : acc) {
        svg::Series s;
        s.label = label;
        for (const auto& [x, sum] : pts) {
            s.points.push_back({x, sum.first / sum.second});
        }
        series.push_back(std::move(s));
    }
    return series;
}

}  // namespace

void emit_results(const ResultTable& table, const std::string& out_dir,
                  const std::string& study_name, const std::string& settings_echo) {
    if (table.empty()) {
        throw ConfigError("emit_results: empty result table");
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    {
        std::ofstream csv(dir / (study_name + ".csv"), std::ios::binary);
        if (!csv) {
            throw IoError("cannot write results CSV in " + out_dir);
        }
        csv << results_csv_string(table);
    }

    svg::Chart ber_chart;
    ber_chart.title = study_name + ": BER vs SNR";
    ber_chart.x_label = "SNR (dB)";
    ber_chart.y_label = "BER";
    ber_chart.log_y = true;
    ber_chart.series = build_series(table, /*use_ber=*/true);
    svg::write_chart(ber_chart, (dir / (study_name + "_ber.svg")).string());

    svg::Chart rate_chart;
    rate_chart.title = study_name + ": OFDM data rate vs SNR";
    rate_chart.x_label = "SNR (dB)";
    rate_chart.y_label = "data-rate fraction";
    rate_chart.log_y = false;
    rate_chart.series = build_series(table, /*use_ber=*/false);
    svg::write_chart(rate_chart, (dir / (study_name + "_rate.svg")).string());

    if (!settings_echo.empty()) {
        std::ofstream echo(dir / (study_name + "_config.txt"));
        if (!echo) {
            throw IoError("cannot write settings sidecar in " + out_dir);
        }
        echo << settings_echo;
    }
}

}  // namespace adapilot

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adapilot/channel.hpp"
#include "adapilot/controller.hpp"
#include "adapilot/estimation.hpp"
#include "adapilot/grid.hpp"
#include "adapilot/harness.hpp"

namespace py = pybind11;
using namespace adapilot;

PYBIND11_MODULE(_adapilot, m) {
    m.doc() = "OFDM link simulator with adaptive pilot-pattern channel estimation";

    py::class_<LinkConfig>(m, "LinkConfig")
        .def(py::init<>())
        .def_readwrite("num_subcarriers", &LinkConfig::num_subcarriers)
        .def_readwrite("cp_length", &LinkConfig::cp_length)
        .def_readwrite("subcarrier_bandwidth_hz", &LinkConfig::subcarrier_bandwidth_hz)
        .def_readwrite("symbol_time_s", &LinkConfig::symbol_time_s)
        .def_readwrite("modulation_order", &LinkConfig::modulation_order)
        .def_readwrite("base_pilot_period", &LinkConfig::base_pilot_period)
        .def_readwrite("pilots_per_sounding", &LinkConfig::pilots_per_sounding)
        .def_readwrite("pilot_subcarrier_spacing", &LinkConfig::pilot_subcarrier_spacing)
        .def_readwrite("snr_db", &LinkConfig::snr_db)
        .def_readwrite("ber_threshold", &LinkConfig::ber_threshold)
        .def_readwrite("ber_window_bits", &LinkConfig::ber_window_bits)
        .def_readwrite("feedback_delay", &LinkConfig::feedback_delay)
        .def_readwrite("rng_seed", &LinkConfig::rng_seed)
        .def("validate", &LinkConfig::validate);

    py::class_<ChannelProfile>(m, "ChannelProfile")
        .def(py::init<>())
        .def_readwrite("tap_delays", &ChannelProfile::tap_delays)
        .def_readwrite("tap_powers", &ChannelProfile::tap_powers)
        .def_readwrite("stationarity_rho", &ChannelProfile::stationarity_rho)
        .def("validate", &ChannelProfile::validate)
        .def_static("default_profile", &ChannelProfile::default_profile, py::arg("rho") = 1.0)
        .def_static("stationarity_model", &ChannelProfile::stationarity_model);

    py::class_<BoundarySet>(m, "BoundarySet")
        .def(py::init<>())
        .def_readwrite("lower", &BoundarySet::lower)
        .def_readwrite("upper", &BoundarySet::upper)
        .def("validate", &BoundarySet::validate)
        .def_static("table", &BoundarySet::table)
        .def_static("from_polynomials", &BoundarySet::from_polynomials);

    py::class_<PatternSpec>(m, "PatternSpec")
        .def_readonly("index", &PatternSpec::index)
        .def_readonly("period", &PatternSpec::period)
        .def_readonly("pilots_per_sounding", &PatternSpec::pilots_per_sounding)
        .def("number", &PatternSpec::number);

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("snr_db", &RunMetrics::snr_db)
        .def_readonly("total_bits", &RunMetrics::total_bits)
        .def_readonly("bit_errors", &RunMetrics::bit_errors)
        .def_readonly("ber", &RunMetrics::ber)
        .def_readonly("data_rate_fraction", &RunMetrics::data_rate_fraction)
        .def_readonly("pattern_occupancy", &RunMetrics::pattern_occupancy)
        .def_readonly("resets", &RunMetrics::resets)
        .def_readonly("seed", &RunMetrics::seed)
        .def_readonly("soundings", &RunMetrics::soundings)
        .def_readonly("erasures", &RunMetrics::erasures);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("study", &ResultRow::study)
        .def_readonly("mode", &ResultRow::mode)
        .def_readonly("snr_db", &ResultRow::snr_db)
        .def_readonly("model", &ResultRow::model)
        .def_readonly("boundary_set", &ResultRow::boundary_set)
        .def_readonly("trial", &ResultRow::trial)
        .def_readonly("ber", &ResultRow::ber)
        .def_readonly("data_rate", &ResultRow::data_rate)
        .def_readonly("resets", &ResultRow::resets)
        .def_readonly("occ", &ResultRow::occ)
        .def_readonly("seed", &ResultRow::seed);

    py::class_<StudyConfig>(m, "StudyConfig")
        .def(py::init<>())
        .def_readwrite("snr_grid_db", &StudyConfig::snr_grid_db)
        .def_readwrite("symbols_per_point", &StudyConfig::symbols_per_point)
        .def_readwrite("trials", &StudyConfig::trials)
        .def_readwrite("boundary_set_id", &StudyConfig::boundary_set_id)
        .def_readwrite("channel_model_id", &StudyConfig::channel_model_id);

    m.def("lower_boundary", &lower_boundary, py::arg("i"));
    m.def("higher_boundary", &higher_boundary, py::arg("i"));
    m.def("cross_correlation",
          [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
              return cross_correlation(a, b);
          },
          py::arg("p1"), py::arg("p2"));
    m.def("select_pattern",
          [](double r, const BoundarySet& b, int n, int pilots) {
              return select_pattern(r, b, n, pilots);
          },
          py::arg("correlation"), py::arg("boundaries"), py::arg("base_period_n") = 2,
          py::arg("pilots_per_sounding") = 64);
    m.def("ber_error", &ber_error, py::arg("measured_ber"), py::arg("threshold_ber"));
    m.def("max_pilot_spacing", &max_pilot_spacing, py::arg("num_subcarriers"),
          py::arg("tau_max_s"), py::arg("symbol_time_s"));

    m.def("run_link",
          [](const LinkConfig& config, const ChannelProfile& profile, bool adaptive,
             int fixed_pattern, const BoundarySet& boundaries, long num_symbols,
             std::uint64_t seed) {
              const RunMode mode = adaptive ? RunMode::adaptive_mode(boundaries)
                                            : RunMode::fixed(fixed_pattern - 1);
              return run_link(config, profile, mode, num_symbols, seed);
          },
          py::arg("config"), py::arg("profile"), py::arg("adaptive") = true,
          py::arg("fixed_pattern") = 1, py::arg("boundaries") = BoundarySet::table(4),
          py::arg("num_symbols") = 20000, py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("study_adaptive_vs_fixed", &study_adaptive_vs_fixed, py::arg("link"), py::arg("study"),
          py::arg("master_seed") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("study_boundaries", &study_boundaries, py::arg("link"), py::arg("study"),
          py::arg("master_seed") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("study_models", &study_models, py::arg("link"), py::arg("study"),
          py::arg("master_seed") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("emit_results", &emit_results, py::arg("table"), py::arg("out_dir"),
          py::arg("study_name"), py::arg("settings_echo") = std::string());

#ifdef VERSION_INFO
#define ADAPILOT_STR_INNER(x) #x
#define ADAPILOT_STR(x) ADAPILOT_STR_INNER(x)
    m.attr("__version__") = ADAPILOT_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}

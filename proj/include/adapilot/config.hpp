#pragma once

#include <string>

#include "adapilot/harness.hpp"

namespace adapilot {

// Everything a simulation needs, assembled from a config file plus CLI
// overrides.
struct Settings {
    LinkConfig link;
    ChannelProfile profile = ChannelProfile::default_profile();
    StudyConfig study;
    StationarityMode stationarity_mode = StationarityMode::GaussMarkov;
    bool profile_explicit = false;  // true once tap_delays/tap_powers/rho appear
    std::uint64_t master_seed = 1;
};

// `key = value` lines, `#` comments. Every LinkConfig / ChannelProfile /
// StudyConfig field is addressable; unknown keys raise ConfigError.
Settings parse_config_file(const std::string& path);
Settings parse_config_text(const std::string& text);

// Resolved key=value dump written next to each result file.
std::string settings_echo(const Settings& settings);

}  // namespace adapilot

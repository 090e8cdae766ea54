#include "adapilot/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "adapilot/error.hpp"

namespace adapilot {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf" || value == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw ConfigError("config: empty list for " + key);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const auto& item : split_list(value)) {
        out.push_back(static_cast<int>(parse_long(key, item)));
    }
    if (out.empty()) {
        throw ConfigError("config: empty list for " + key);
    }
    return out;
}

}  // namespace

Settings parse_config_text(const std::string& text) {
    Settings s;
    std::optional<std::array<double, 4>> boundary_lower;
    std::optional<std::array<double, 4>> boundary_upper;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }

        if (key == "num_subcarriers") {
            s.link.num_subcarriers = static_cast<int>(parse_long(key, value));
        } else if (key == "cp_length") {
            s.link.cp_length = static_cast<int>(parse_long(key, value));
        } else if (key == "subcarrier_bandwidth_hz") {
            s.link.subcarrier_bandwidth_hz = parse_double(key, value);
        } else if (key == "symbol_time_s") {
            s.link.symbol_time_s = parse_double(key, value);
        } else if (key == "modulation_order") {
            s.link.modulation_order = static_cast<int>(parse_long(key, value));
        } else if (key == "base_pilot_period") {
            s.link.base_pilot_period = static_cast<int>(parse_long(key, value));
        } else if (key == "pilots_per_sounding") {
            s.link.pilots_per_sounding = static_cast<int>(parse_long(key, value));
        } else if (key == "pilot_subcarrier_spacing") {
            s.link.pilot_subcarrier_spacing = static_cast<int>(parse_long(key, value));
        } else if (key == "snr_db") {
            s.link.snr_db = parse_double(key, value);
        } else if (key == "ber_threshold") {
            s.link.ber_threshold = parse_double(key, value);
        } else if (key == "ber_window_bits") {
            s.link.ber_window_bits = parse_long(key, value);
        } else if (key == "feedback_delay") {
            s.link.feedback_delay = static_cast<int>(parse_long(key, value));
        } else if (key == "rng_seed") {
            s.link.rng_seed = static_cast<std::uint64_t>(parse_long(key, value));
            s.master_seed = s.link.rng_seed;
        } else if (key == "tap_delays") {
            s.profile.tap_delays = parse_int_list(key, value);
            s.profile_explicit = true;
        } else if (key == "tap_powers") {
            s.profile.tap_powers = parse_double_list(key, value);
            s.profile_explicit = true;
        } else if (key == "rho") {
            s.profile.stationarity_rho = parse_double(key, value);
            s.profile_explicit = true;
        } else if (key == "snr_grid") {
            s.study.snr_grid_db = parse_double_list(key, value);
        } else if (key == "symbols_per_point") {
            s.study.symbols_per_point = parse_long(key, value);
        } else if (key == "trials") {
            s.study.trials = static_cast<int>(parse_long(key, value));
        } else if (key == "boundary_set") {
            s.study.boundary_set_id = static_cast<int>(parse_long(key, value));
        } else if (key == "channel_model") {
            s.study.channel_model_id = static_cast<int>(parse_long(key, value));
        } else if (key == "boundary_lower" || key == "boundary_upper") {
            const auto values = parse_double_list(key, value);
            if (values.size() != 4) {
                throw ConfigError("config: " + key + " needs exactly 4 values");
            }
            std::array<double, 4> arr{};
            std::copy(values.begin(), values.end(), arr.begin());
            (key == "boundary_lower" ? boundary_lower : boundary_upper) = arr;
        } else if (key == "stationarity_mode") {
            if (value != "gauss-markov") {
                throw ConfigError("config: unsupported stationarity_mode '" + value + "'");
            }
            s.stationarity_mode = StationarityMode::GaussMarkov;
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }

    if (boundary_lower.has_value() != boundary_upper.has_value()) {
        throw ConfigError("config: boundary_lower and boundary_upper must be given together");
    }
    if (boundary_lower) {
        BoundarySet b;
        b.lower = *boundary_lower;
        b.upper = *boundary_upper;
        b.validate();
        s.study.explicit_boundaries = b;
    }
    if (s.profile_explicit) {
        s.profile.validate();
        s.study.explicit_profile = s.profile;
    }
    s.link.validate();
    return s;
}

Settings parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string settings_echo(const Settings& s) {
    std::ostringstream out;
    char buf[128];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    out << "num_subcarriers = " << s.link.num_subcarriers << '\n';
    out << "cp_length = " << s.link.cp_length << '\n';
    out << "subcarrier_bandwidth_hz = " << num(s.link.subcarrier_bandwidth_hz) << '\n';
    out << "symbol_time_s = " << num(s.link.symbol_time_s) << '\n';
    out << "modulation_order = " << s.link.modulation_order << '\n';
    out << "base_pilot_period = " << s.link.base_pilot_period << '\n';
    out << "pilots_per_sounding = " << s.link.pilots_per_sounding << '\n';
    out << "pilot_subcarrier_spacing = " << s.link.pilot_subcarrier_spacing << '\n';
    out << "snr_db = " << num(s.link.snr_db) << '\n';
    out << "ber_threshold = " << num(s.link.ber_threshold) << '\n';
    out << "ber_window_bits = " << s.link.ber_window_bits << '\n';
    out << "feedback_delay = " << s.link.feedback_delay << '\n';
    out << "rng_seed = " << s.link.rng_seed << '\n';

    const ChannelProfile profile = s.study.explicit_profile
                                       ? *s.study.explicit_profile
                                       : ChannelProfile::stationarity_model(s.study.channel_model_id);
    out << "tap_delays = ";
    for (std::size_t i = 0; i < profile.tap_delays.size(); ++i) {
        out << (i ? "," : "") << profile.tap_delays[i];
    }
    out << '\n';
    out << "tap_powers = ";
    for (std::size_t i = 0; i < profile.tap_powers.size(); ++i) {
        out << (i ? "," : "") << num(profile.tap_powers[i]);
    }
    out << '\n';
    out << "rho = " << num(profile.stationarity_rho) << '\n';

    out << "snr_grid = ";
    for (std::size_t i = 0; i < s.study.snr_grid_db.size(); ++i) {
        out << (i ? "," : "") << num(s.study.snr_grid_db[i]);
    }
    out << '\n';
    out << "symbols_per_point = " << s.study.symbols_per_point << '\n';
    out << "trials = " << s.study.trials << '\n';
    out << "boundary_set = " << s.study.boundary_set_id << '\n';
    out << "channel_model = " << s.study.channel_model_id << '\n';
    const BoundarySet b = s.study.boundaries();
    out << "boundary_lower = ";
    for (int i = 0; i < 4; ++i) {
        out << (i ? "," : "") << num(b.lower[i]);
    }
    out << '\n';
    out << "boundary_upper = ";
    for (int i = 0; i < 4; ++i) {
        out << (i ? "," : "") << num(b.upper[i]);
    }
    out << '\n';
    out << "stationarity_mode = gauss-markov\n";
    return out.str();
}

}  // namespace adapilot

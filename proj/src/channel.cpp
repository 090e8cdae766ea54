#include "adapilot/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "adapilot/error.hpp"
#include "adapilot/rng.hpp"

namespace adapilot {

int ChannelProfile::max_delay() const {
    return tap_delays.empty() ? 0 : *std::max_element(tap_delays.begin(), tap_delays.end());
}

void ChannelProfile::validate() const {
    if (tap_delays.empty() || tap_delays.size() != tap_powers.size()) {
        throw ConfigError("channel profile: tap_delays and tap_powers must match and be non-empty");
    }
    if (tap_delays.front() != 0) {
        throw ConfigError("channel profile: first tap delay must be 0");
    }
    for (std::size_t i = 1; i < tap_delays.size(); ++i) {
        if (tap_delays[i] <= tap_delays[i - 1]) {
            throw ConfigError("channel profile: tap delays must be strictly ascending");
        }
    }
    double sum = 0.0;
    for (double p : tap_powers) {
        if (p <= 0.0) {
            throw ConfigError("channel profile: tap powers must be positive");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("channel profile: tap powers must sum to 1");
    }
    if (stationarity_rho < 0.0 || stationarity_rho > 1.0) {
        throw ConfigError("channel profile: stationarity_rho must lie in [0, 1]");
    }
}

ChannelProfile ChannelProfile::default_profile(double rho) {
    ChannelProfile p;
    p.tap_delays = {0, 1, 2, 3, 4, 5, 6, 7};
    p.tap_powers.resize(p.tap_delays.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.tap_powers.size(); ++i) {
        p.tap_powers[i] = std::exp(-static_cast<double>(p.tap_delays[i]) / 6.0);
        sum += p.tap_powers[i];
    }
    for (auto& v : p.tap_powers) {
        v /= sum;
    }
    p.stationarity_rho = rho;
    return p;
}

ChannelProfile ChannelProfile::stationarity_model(int model_id) {
    if (model_id < 1 || model_id > 5) {
        throw ConfigError("stationarity model id must lie in 1..5");
    }
    const double rho = 1.0 - 0.2 * (model_id - 1);
    return default_profile(rho);
}

namespace {

cplx circular_gaussian(double variance, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    const double re = g(rng);
    const double im = g(rng);
    return cplx(re, im);
}

}  // namespace

ChannelState init_channel(const ChannelProfile& profile, std::mt19937_64& rng) {
    profile.validate();
    ChannelState state;
    state.tap_gains.reserve(profile.tap_powers.size());
    for (double power : profile.tap_powers) {
        state.tap_gains.push_back(circular_gaussian(power, rng));
    }
    state.symbol_index = 0;
    return state;
}

ChannelState init_channel(const ChannelProfile& profile, std::uint64_t seed) {
    auto rng = make_rng(seed);
    return init_channel(profile, rng);
}

ChannelState step_channel(const ChannelState& state, const ChannelProfile& profile,
                          std::mt19937_64& rng) {
    const double keep = std::sqrt(profile.stationarity_rho);
    const double mix = std::sqrt(1.0 - profile.stationarity_rho);
    ChannelState next;
    next.tap_gains.reserve(state.tap_gains.size());
    for (std::size_t m = 0; m < state.tap_gains.size(); ++m) {
        const cplx w = circular_gaussian(profile.tap_powers[m], rng);
        next.tap_gains.push_back(keep * state.tap_gains[m] + mix * w);
    }
    next.symbol_index = state.symbol_index + 1;
    return next;
}

TimeDomainSignal apply_channel(const TimeDomainSignal& signal,
                               std::span<const ChannelState> states, const ChannelProfile& profile,
                               double snr_db, std::mt19937_64& noise_rng) {
    const int sps = signal.samples_per_symbol;
    const int num_symbols = signal.num_symbols();
    if (static_cast<int>(states.size()) != num_symbols) {
        throw LengthMismatchError("apply_channel: need one channel state per OFDM symbol");
    }

    TimeDomainSignal out;
    out.samples_per_symbol = sps;
    out.samples.assign(signal.samples.size(), cplx{});

    // Per-symbol convolution: each transmitted sample rings through the taps
    // of the symbol it belongs to; tails beyond the last sample are dropped.
    const std::size_t total = signal.samples.size();
    for (int t = 0; t < num_symbols; ++t) {
        const auto& gains = states[t].tap_gains;
        const std::size_t base = static_cast<std::size_t>(t) * sps;
        for (int i = 0; i < sps; ++i) {
            const cplx x = signal.samples[base + i];
            if (x == cplx{}) {
                continue;
            }
            for (std::size_t m = 0; m < gains.size(); ++m) {
                const std::size_t pos = base + i + profile.tap_delays[m];
                if (pos < total) {
                    out.samples[pos] += x * gains[m];
                }
            }
        }
    }

    if (std::isfinite(snr_db)) {
        double mean_power = 0.0;
        for (const auto& v : out.samples) {
            mean_power += std::norm(v);
        }
        mean_power /= static_cast<double>(std::max<std::size_t>(total, 1));
        const double noise_var = mean_power * std::pow(10.0, -snr_db / 10.0);
        const double amplitude = std::sqrt(noise_var / 2.0);
        // Unit draws scaled afterwards: the draw count per sample stays fixed,
        // so paired runs consume identical noise streams.
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& v : out.samples) {
            v += amplitude * cplx(g(noise_rng), g(noise_rng));
        }
    }
    return out;
}

std::vector<cplx> true_frequency_response(const ChannelState& state, const ChannelProfile& profile,
                                          int num_subcarriers) {
    std::vector<cplx> response(num_subcarriers);
    for (int k = 0; k < num_subcarriers; ++k) {
        cplx sum{};
        for (std::size_t m = 0; m < state.tap_gains.size(); ++m) {
            const double angle =
                -2.0 * std::numbers::pi * k * profile.tap_delays[m] / num_subcarriers;
            sum += state.tap_gains[m] * cplx(std::cos(angle), std::sin(angle));
        }
        response[k] = sum;
    }
    return response;
}

}  // namespace adapilot

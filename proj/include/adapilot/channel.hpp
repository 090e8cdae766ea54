#pragma once

#include <random>
#include <span>
#include <vector>

#include "adapilot/phy.hpp"

namespace adapilot {

// Tapped-delay-line profile. `stationarity_rho` is the Gauss-Markov mixing
// weight applied once per OFDM symbol: 1 freezes the taps, 0 redraws them.
struct ChannelProfile {
    std::vector<int> tap_delays{0};       // samples, first must be 0, ascending
    std::vector<double> tap_powers{1.0};  // linear, sums to 1
    double stationarity_rho = 1.0;

    int max_delay() const;
    void validate() const;  // throws ConfigError

    // Eight taps with a slow exponential power decay, normalized to unit
    // total power. Fits under the default cyclic prefix.
    static ChannelProfile default_profile(double rho = 1.0);

    // Stationarity models 1..5 (100% .. 20%).
    static ChannelProfile stationarity_model(int model_id);
};

struct ChannelState {
    std::vector<cplx> tap_gains;
    long symbol_index = 0;
};

// Independent circular-Gaussian draw per tap, variance = tap power.
ChannelState init_channel(const ChannelProfile& profile, std::mt19937_64& rng);
ChannelState init_channel(const ChannelProfile& profile, std::uint64_t seed);

// One Gauss-Markov step: h' = sqrt(rho) h + sqrt(1 - rho) w.
ChannelState step_channel(const ChannelState& state, const ChannelProfile& profile,
                          std::mt19937_64& rng);

// Block-static convolution per OFDM symbol (tails spill into the next
// symbol's CP) plus AWGN sized so that the average received sample energy
// over noise variance matches snr_db. snr_db may be +inf for noiseless runs.
TimeDomainSignal apply_channel(const TimeDomainSignal& signal,
                               std::span<const ChannelState> states, const ChannelProfile& profile,
                               double snr_db, std::mt19937_64& noise_rng);

// H(k) = sum_m h_m exp(-j 2 pi k d_m / N).
std::vector<cplx> true_frequency_response(const ChannelState& state, const ChannelProfile& profile,
                                          int num_subcarriers);

}  // namespace adapilot

#pragma once

#include <span>
#include <string>
#include <vector>

#include "adapilot/channel.hpp"
#include "adapilot/grid.hpp"

namespace adapilot {

// Per-subcarrier channel estimate plus the raw pilot observation it came
// from (the controller correlates consecutive observations).
struct ChannelEstimate {
    std::vector<cplx> gains;             // length N
    long sounded_at = -1;                // symbol index of the sounding, -1 = never
    long age = 0;                        // symbols since the sounding
    std::vector<cplx> source_pilot_obs;  // received pilot-subcarrier vector

    bool valid() const { return sounded_at >= 0; }
};

// Linear interpolation of pilot-position gains onto all N subcarriers.
// Real and imaginary parts interpolate independently; edges extend the
// nearest pilot value. A single pilot extends as a constant.
std::vector<cplx> interpolate(std::span<const cplx> pilot_gains, std::span<const int> pilot_indices,
                              int num_subcarriers);

// Least-squares estimate: H(k_p) = Y(k_p) / X(k_p) at each pilot index,
// remaining subcarriers filled by interpolation.
// Throws EmptyPilotsError / ZeroPilotSymbolError / LengthMismatchError.
ChannelEstimate ls_estimate(std::span<const cplx> received_pilots,
                            std::span<const cplx> known_pilots,
                            std::span<const int> pilot_indices, int num_subcarriers);

// Sampling-theorem bound on pilot spacing, in subcarrier slots:
// N / (2 tau / T_s), infinite for tau == 0.
// Throws NonPositiveSymbolTimeError.
double max_pilot_spacing(int num_subcarriers, double tau_max_s, double symbol_time_s);

struct AdmissibilityReport {
    bool ok = true;
    double spacing_limit = 0.0;  // subcarrier slots
    double actual_spacing = 0.0;
    std::string message;
};

// Checks a layout's tone spacing against the bound above, using the
// profile's maximum tap delay. A violation is reported, not thrown; the
// simulation may proceed to demonstrate the resulting degradation.
AdmissibilityReport check_layout_admissible(const PilotLayout& layout,
                                            const ChannelProfile& profile,
                                            const LinkConfig& config);

}  // namespace adapilot

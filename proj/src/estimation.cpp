#include "adapilot/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "adapilot/error.hpp"

namespace adapilot {

std::vector<cplx> interpolate(std::span<const cplx> pilot_gains, std::span<const int> pilot_indices,
                              int num_subcarriers) {
    if (pilot_gains.empty() || pilot_gains.size() != pilot_indices.size()) {
        throw LengthMismatchError("interpolate: gains and indices must match and be non-empty");
    }
    for (std::size_t i = 1; i < pilot_indices.size(); ++i) {
        if (pilot_indices[i] <= pilot_indices[i - 1]) {
            throw LengthMismatchError("interpolate: pilot indices must be strictly ascending");
        }
    }
    if (pilot_indices.front() < 0 || pilot_indices.back() >= num_subcarriers) {
        throw IndexOutOfRangeError("interpolate: pilot index outside the subcarrier range");
    }

    std::vector<cplx> out(num_subcarriers);
    std::size_t seg = 0;  // current segment [pilot_indices[seg], pilot_indices[seg+1]]
    for (int k = 0; k < num_subcarriers; ++k) {
        if (k <= pilot_indices.front()) {
            out[k] = pilot_gains.front();
            continue;
        }
        if (k >= pilot_indices.back()) {
            out[k] = pilot_gains.back();
            continue;
        }
        while (pilot_indices[seg + 1] < k) {
            ++seg;
        }
        const int k0 = pilot_indices[seg];
        const int k1 = pilot_indices[seg + 1];
        const double w = static_cast<double>(k - k0) / static_cast<double>(k1 - k0);
        out[k] = (1.0 - w) * pilot_gains[seg] + w * pilot_gains[seg + 1];
    }
    return out;
}

ChannelEstimate ls_estimate(std::span<const cplx> received_pilots,
                            std::span<const cplx> known_pilots,
                            std::span<const int> pilot_indices, int num_subcarriers) {
    if (received_pilots.empty()) {
        throw EmptyPilotsError("ls_estimate: no pilot observations");
    }
    if (received_pilots.size() != known_pilots.size() ||
        received_pilots.size() != pilot_indices.size()) {
        throw LengthMismatchError("ls_estimate: pilot vectors must have equal lengths");
    }

    std::vector<cplx> pilot_gains(received_pilots.size());
    for (std::size_t i = 0; i < received_pilots.size(); ++i) {
        if (known_pilots[i] == cplx{}) {
            throw ZeroPilotSymbolError("ls_estimate: transmitted pilot value is zero");
        }
        pilot_gains[i] = received_pilots[i] / known_pilots[i];
    }

    ChannelEstimate est;
    est.gains = interpolate(pilot_gains, pilot_indices, num_subcarriers);
    est.sounded_at = 0;
    est.age = 0;
    est.source_pilot_obs.assign(received_pilots.begin(), received_pilots.end());
    return est;
}

double max_pilot_spacing(int num_subcarriers, double tau_max_s, double symbol_time_s) {
    if (symbol_time_s <= 0.0) {
        throw NonPositiveSymbolTimeError("max_pilot_spacing: symbol time must be positive");
    }
    if (tau_max_s < 0.0) {
        throw ConfigError("max_pilot_spacing: tau must be >= 0");
    }
    if (tau_max_s == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return num_subcarriers / (2.0 * tau_max_s / symbol_time_s);
}

AdmissibilityReport check_layout_admissible(const PilotLayout& layout,
                                            const ChannelProfile& profile,
                                            const LinkConfig& config) {
    // tau / T_s is taken as the max tap delay in samples: one sample lasts
    // symbol_time / N, so the ratio is dimensionless either way.
    const double sample_time = config.symbol_time_s / config.num_subcarriers;
    const double tau = profile.max_delay() * sample_time;
    const double limit = max_pilot_spacing(config.num_subcarriers, tau, sample_time);

    AdmissibilityReport report;
    report.spacing_limit = limit;
    report.actual_spacing =
        layout.arrangement == PilotArrangement::BlockType ? 1.0 : layout.freq_spacing;
    report.ok = report.actual_spacing <= limit;

    char buf[256];
    if (report.ok) {
        std::snprintf(buf, sizeof(buf),
                      "pilot spacing %.6g slots within sampling bound %.6g (max tap delay %d "
                      "samples; bound reads tau/T_s in sample units)",
                      report.actual_spacing, limit, profile.max_delay());
    } else {
        std::snprintf(buf, sizeof(buf),
                      "pilot spacing %.6g slots exceeds sampling bound %.6g (max tap delay %d "
                      "samples; bound reads tau/T_s in sample units): channel transfer function "
                      "is undersampled and interpolation will alias",
                      report.actual_spacing, limit, profile.max_delay());
    }
    report.message = buf;
    return report;
}

}  // namespace adapilot

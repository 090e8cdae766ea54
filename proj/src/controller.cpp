#include "adapilot/controller.hpp"

#include <algorithm>
#include <cmath>

#include "adapilot/error.hpp"

namespace adapilot {

PatternSpec make_pattern(int index, int base_period_n, int pilots_per_sounding) {
    if (index < 0 || index > 3) {
        throw IndexOutOfRangeError("pattern index must lie in 0..3");
    }
    PatternSpec p;
    p.index = index;
    p.period = static_cast<long>(1L << index) * base_period_n;
    p.pilots_per_sounding = pilots_per_sounding;
    return p;
}

void BoundarySet::validate() const {
    if (lower[0] != 0.0) {
        throw ConfigError("boundary set: lowest bound must be 0");
    }
    if (upper[3] != 1.0) {
        throw ConfigError("boundary set: highest bound must be 1");
    }
    for (int i = 0; i < 4; ++i) {
        if (!(lower[i] < upper[i])) {
            throw ConfigError("boundary set: intervals must be non-empty");
        }
        if (i < 3 && std::abs(upper[i] - lower[i + 1]) > 1e-12) {
            throw ConfigError("boundary set: intervals must be contiguous");
        }
    }
}

BoundarySet BoundarySet::table(int set_id) {
    BoundarySet b;
    switch (set_id) {
        case 1:
            b.lower = {0.0, 0.25, 0.5, 0.75};
            b.upper = {0.25, 0.5, 0.75, 1.0};
            break;
        case 2:
            b.lower = {0.0, 0.5, 0.7, 0.9};
            b.upper = {0.5, 0.7, 0.9, 1.0};
            break;
        case 3:
            b.lower = {0.0, 0.6, 0.7, 0.9};
            b.upper = {0.6, 0.7, 0.9, 1.0};
            break;
        case 4:
            b.lower = {0.0, 0.7, 0.8, 0.9};
            b.upper = {0.7, 0.8, 0.9, 1.0};
            break;
        case 5:
            // Pattern 3's upper edge is snapped to pattern 4's lower edge
            // so the set partitions [0, 1].
            b.lower = {0.0, 0.9, 0.95, 0.975};
            b.upper = {0.9, 0.95, 0.975, 1.0};
            break;
        default:
            throw ConfigError("boundary set id must lie in 1..5");
    }
    b.validate();
    return b;
}

BoundarySet BoundarySet::from_polynomials() {
    BoundarySet b;
    for (int i = 0; i < 4; ++i) {
        b.lower[i] = lower_boundary(i);
        b.upper[i] = higher_boundary(i);
    }
    // Snap to exact partition edges so half-open interval selection is total.
    b.lower[0] = 0.0;
    b.upper[3] = 1.0;
    for (int i = 0; i < 3; ++i) {
        b.lower[i + 1] = b.upper[i];
    }
    b.validate();
    return b;
}

double cross_correlation(std::span<const cplx> p1, std::span<const cplx> p2) {
    if (p1.empty() || p1.size() != p2.size()) {
        throw LengthMismatchError("cross_correlation: vectors must have equal nonzero length");
    }
    cplx inner{};
    double e1 = 0.0;
    double e2 = 0.0;
    for (std::size_t m = 0; m < p1.size(); ++m) {
        inner += p1[m] * std::conj(p2[m]);
        e1 += std::norm(p1[m]);
        e2 += std::norm(p2[m]);
    }
    if (e1 <= 0.0 || e2 <= 0.0) {
        throw ZeroEnergyError("cross_correlation: zero-energy observation");
    }
    const double r = std::abs(inner) / std::sqrt(e1 * e2);
    return std::clamp(r, 0.0, 1.0);
}

namespace {

void check_boundary_index(int i) {
    if (i < 0 || i > 3) {
        throw IndexOutOfRangeError("boundary index must lie in 0..3");
    }
}

}  // namespace

double lower_boundary(int i) {
    check_boundary_index(i);
    const double x = i;
    return 0.1 * x * x * x - 0.6 * x * x + 1.2 * x;
}

double higher_boundary(int i) {
    check_boundary_index(i);
    return 0.1 * i + 0.7;
}

double lower_boundary_factored(int i) {
    check_boundary_index(i);
    const double x = i;
    return 0.7 * x - 0.3 * x * (x - 1.0) + 0.1 * x * (x - 1.0) * (x - 2.0);
}

double higher_boundary_factored(int i) {
    check_boundary_index(i);
    return 0.7 * (i + 1.0) - 0.6 * i;
}

PatternSpec select_pattern(double correlation, const BoundarySet& boundaries, int base_period_n,
                           int pilots_per_sounding) {
    const double r = std::clamp(correlation, 0.0, 1.0);
    int index = 0;
    for (int i = 3; i >= 1; --i) {
        if (r >= boundaries.lower[i]) {
            index = i;
            break;
        }
    }
    return make_pattern(index, base_period_n, pilots_per_sounding);
}

double ber_error(double measured_ber, double threshold_ber) {
    return measured_ber - threshold_ber;
}

Controller::Controller(int base_period_n, int pilots_per_sounding, double ber_threshold,
                       long ber_window_bits, BoundarySet boundaries, int feedback_delay)
    : base_period_n_(base_period_n),
      pilots_per_sounding_(pilots_per_sounding),
      ber_threshold_(ber_threshold),
      ber_window_bits_(ber_window_bits),
      boundaries_(boundaries),
      feedback_delay_(feedback_delay) {
    if (base_period_n_ < 1) {
        throw ConfigError("controller: base period n must be >= 1");
    }
    if (ber_window_bits_ < 1) {
        throw ConfigError("controller: BER window must hold at least one bit");
    }
    boundaries_.validate();
    active_pattern_ = make_pattern(0, base_period_n_, pilots_per_sounding_);
}

void Controller::apply_pending_messages() {
    while (!pending_.empty() && pending_.front().effective_at <= symbol_index_) {
        const PendingPattern msg = pending_.front();
        pending_.pop_front();
        if (msg.is_reset) {
            active_pattern_ = make_pattern(0, base_period_n_, pilots_per_sounding_);
            window_.clear();
            window_bits_total_ = 0;
            window_errors_total_ = 0;
            prev_pilot_obs_.clear();
            symbols_until_next_sounding_ = 0;
        } else {
            active_pattern_ = msg.pattern;
            symbols_until_next_sounding_ =
                std::min(symbols_until_next_sounding_, msg.pattern.period);
        }
    }
}

SoundingOutcome Controller::on_sounding(std::span<const cplx> pilot_observation) {
    SoundingOutcome outcome;
    if (prev_pilot_obs_.empty()) {
        // First sounding of a (re)started sequence: nothing to correlate
        // against yet, stay on pattern 1.
        outcome.pattern = make_pattern(0, base_period_n_, pilots_per_sounding_);
    } else {
        const double r = cross_correlation(prev_pilot_obs_, pilot_observation);
        outcome.correlation = r;
        outcome.pattern = select_pattern(r, boundaries_, base_period_n_, pilots_per_sounding_);
    }
    prev_pilot_obs_.assign(pilot_observation.begin(), pilot_observation.end());

    if (feedback_delay_ == 0) {
        active_pattern_ = outcome.pattern;
    } else {
        pending_.push_back({symbol_index_ + feedback_delay_, outcome.pattern, false});
    }
    symbols_until_next_sounding_ = active_pattern_.period;

    ++symbol_index_;
    --symbols_until_next_sounding_;
    apply_pending_messages();
    return outcome;
}

DataSymbolOutcome Controller::on_data_symbol(long bit_errors, long bits) {
    if (bits <= 0) {
        throw ConfigError("on_data_symbol: bits must be > 0");
    }
    if (bit_errors < 0 || bit_errors > bits) {
        throw ConfigError("on_data_symbol: bit_errors out of range");
    }

    DataSymbolOutcome outcome;
    window_.emplace_back(bits, bit_errors);
    window_bits_total_ += bits;
    window_errors_total_ += bit_errors;
    while (!window_.empty() && window_bits_total_ - window_.front().first >= ber_window_bits_) {
        window_bits_total_ -= window_.front().first;
        window_errors_total_ -= window_.front().second;
        window_.pop_front();
    }

    bool reset_now = false;
    if (window_bits_total_ >= ber_window_bits_) {
        const double measured =
            static_cast<double>(window_errors_total_) / static_cast<double>(window_bits_total_);
        const double e = ber_error(measured, ber_threshold_);
        outcome.windowed_ber = measured;
        outcome.error = e;
        if (e > 0.0) {
            outcome.action = ControlAction::ResetToPattern1;
            ++reset_count_;
            if (feedback_delay_ == 0) {
                reset_now = true;
            } else {
                pending_.push_back({symbol_index_ + feedback_delay_,
                                    make_pattern(0, base_period_n_, pilots_per_sounding_), true});
            }
        }
    }

    ++symbol_index_;
    if (reset_now) {
        active_pattern_ = make_pattern(0, base_period_n_, pilots_per_sounding_);
        window_.clear();
        window_bits_total_ = 0;
        window_errors_total_ = 0;
        prev_pilot_obs_.clear();
        symbols_until_next_sounding_ = 0;
    } else if (symbols_until_next_sounding_ > 0) {
        --symbols_until_next_sounding_;
    }
    apply_pending_messages();
    return outcome;
}

}  // namespace adapilot

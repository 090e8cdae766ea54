#pragma once

#include <array>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "adapilot/grid.hpp"

namespace adapilot {

// Pilot schedule i in 0..3: L pilot cells every 2^i * n OFDM symbols.
struct PatternSpec {
    int index = 0;               // 0-based; pattern number = index + 1
    long period = 1;             // 2^index * n
    int pilots_per_sounding = 1; // L

    int number() const { return index + 1; }
};

PatternSpec make_pattern(int index, int base_period_n, int pilots_per_sounding);

// Cross-correlation intervals [lower[i], upper[i]) mapped onto patterns;
// the last interval is closed at 1.
struct BoundarySet {
    std::array<double, 4> lower{};
    std::array<double, 4> upper{};

    void validate() const;  // throws ConfigError unless the set partitions [0, 1]

    // Boundary sets 1..5 used by the parametric boundary study. Set 4 is the
    // canonical one and matches the closed-form polynomials below.
    static BoundarySet table(int set_id);
    // Boundaries evaluated from the cubic/linear closed forms.
    static BoundarySet from_polynomials();
};

// Normalized magnitude of the inner product of two equal-length complex
// vectors, clamped to [0, 1]. Throws ZeroEnergyError / LengthMismatchError.
double cross_correlation(std::span<const cplx> p1, std::span<const cplx> p2);

// Closed forms for the selection boundaries, index 0..3:
//   lower: 0.1 i^3 - 0.6 i^2 + 1.2 i   (equivalently 0.7i - 0.3i(i-1) + 0.1i(i-1)(i-2))
//   upper: 0.1 i + 0.7                 (equivalently 0.7(i+1) - 0.6i)
// Throws IndexOutOfRangeError outside 0..3.
double lower_boundary(int i);
double higher_boundary(int i);
double lower_boundary_factored(int i);
double higher_boundary_factored(int i);

// The unique pattern with lower[i] <= R < upper[i]; R = 1 maps to pattern 4.
PatternSpec select_pattern(double correlation, const BoundarySet& boundaries, int base_period_n,
                           int pilots_per_sounding);

// Signed deviation of measured BER from the target.
double ber_error(double measured_ber, double threshold_ber);

enum class ControlAction { Continue, ResetToPattern1 };

struct SoundingOutcome {
    PatternSpec pattern;                  // pattern selected by this sounding
    std::optional<double> correlation;    // absent on the first sounding after (re)start
};

struct DataSymbolOutcome {
    ControlAction action = ControlAction::Continue;
    std::optional<double> windowed_ber;   // present when the window was evaluated
    std::optional<double> error;          // windowed_ber - threshold at evaluation
};

// Sequential decision state machine: correlation of consecutive pilot
// observations picks the pattern, a sliding BER window resets it.
// One instance drives one simulated link.
class Controller {
  public:
    Controller(int base_period_n, int pilots_per_sounding, double ber_threshold,
               long ber_window_bits, BoundarySet boundaries, int feedback_delay = 0);

    // True when the current symbol must carry pilots.
    bool sounding_due() const { return symbols_until_next_sounding_ == 0; }

    // Consume a pilot observation for the current symbol; selects the next
    // pattern (kept at pattern 1 when no previous observation exists) and
    // schedules the next sounding.
    SoundingOutcome on_sounding(std::span<const cplx> pilot_observation);

    // Consume the genie bit counts of a data symbol; evaluates the sliding
    // window once it holds enough bits and resets to pattern 1 on a positive
    // BER error.
    DataSymbolOutcome on_data_symbol(long bit_errors, long bits);

    const PatternSpec& current_pattern() const { return active_pattern_; }
    long symbols_until_next_sounding() const { return symbols_until_next_sounding_; }
    long window_bits() const { return window_bits_total_; }
    long window_errors() const { return window_errors_total_; }
    long resets() const { return reset_count_; }
    long symbol_index() const { return symbol_index_; }
    bool has_previous_observation() const { return !prev_pilot_obs_.empty(); }

  private:
    void apply_pending_messages();
    void schedule_after_sounding();

    int base_period_n_;
    int pilots_per_sounding_;
    double ber_threshold_;
    long ber_window_bits_;
    BoundarySet boundaries_;
    int feedback_delay_;

    PatternSpec active_pattern_;
    std::vector<cplx> prev_pilot_obs_;
    long symbols_until_next_sounding_ = 0;
    long symbol_index_ = 0;
    long reset_count_ = 0;

    // Sliding BER window over data symbols.
    std::deque<std::pair<long, long>> window_;  // (bits, errors) per data symbol
    long window_bits_total_ = 0;
    long window_errors_total_ = 0;

    // Feedback messages in flight (pattern changes / resets), keyed by the
    // symbol index at which they take effect.
    struct PendingPattern {
        long effective_at;
        PatternSpec pattern;
        bool is_reset;
    };
    std::deque<PendingPattern> pending_;
};

}  // namespace adapilot

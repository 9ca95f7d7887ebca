#pragma once

#include <cstddef>

namespace crn {

// How long the strategy-decision part of a round lasts.
enum class DecisionSlotRule {
    Fixed,         // t_s = decision_mini_rounds * t_m
    PerMiniRound,  // t_s = (mini-rounds used + 1 for weight broadcast) * t_m
};

/// Round timing. Defaults are the reference cognitive-radio parameters:
/// t_b = 100 ms, t_l = 50 ms, t_d = 1000 ms and t_s = 4 t_m, giving t_a = 2000 ms.
struct TimingModel {
    double broadcast_ms = 100.0;     // t_b
    double computation_ms = 50.0;    // t_l
    double transmission_ms = 1000.0; // t_d
    std::size_t decision_mini_rounds = 4;
    DecisionSlotRule rule = DecisionSlotRule::Fixed;
    std::size_t period_slots = 1;    // y

    double mini_round_ms() const { return 2.0 * broadcast_ms + computation_ms; }
    double decision_ms() const { return static_cast<double>(decision_mini_rounds) * mini_round_ms(); }
    double round_ms() const { return decision_ms() + transmission_ms; }
    double theta() const { return transmission_ms / round_ms(); }

    /// Share of a y-slot period spent transmitting: ((y-1) t_a + t_d) / (y t_a).
    double periodic_fraction(std::size_t y) const;

    /// Throws std::invalid_argument when an invariant does not hold.
    void validate() const;
};

}  // namespace crn

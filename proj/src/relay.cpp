#include "hysir/relay.hpp"

#include <cmath>
#include <string>

namespace hysir {

void validate_thresholds(const ThresholdPair& t) {
    if (!(t.alpha1 >= 0.0) || !(t.alpha2 <= 1.0) || !(t.alpha1 < t.alpha2))
        throw InvalidThresholds("thresholds must satisfy 0 <= alpha1 < alpha2 <= 1, got (" +
                                std::to_string(t.alpha1) + ", " + std::to_string(t.alpha2) + ")");
}

namespace {

bool compatible(const RelayState& s, double input) {
    if (input >= s.thresholds.alpha2 && !s.on) return false;
    if (input <= s.thresholds.alpha1 && s.on) return false;
    return true;
}

}  // namespace

RelayState relay_init(const ThresholdPair& thresholds, double input_value,
                      std::optional<bool> requested) {
    validate_thresholds(thresholds);
    if (!(input_value >= 0.0 && input_value <= 1.0))
        throw ContractViolation("relay_init: input value outside [0, 1]");
    if (input_value >= thresholds.alpha2) {
        if (requested && !*requested)
            throw IncompatibleInitialState("relay state 0 contradicts input >= alpha2");
        return {thresholds, true};
    }
    if (input_value <= thresholds.alpha1) {
        if (requested && *requested)
            throw IncompatibleInitialState("relay state 1 contradicts input <= alpha1");
        return {thresholds, false};
    }
    return {thresholds, requested.value_or(false)};
}

RelayState relay_step(const RelayState& state, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw ContractViolation("relay_step: segment endpoints outside [0, 1]");
    if (!compatible(state, a))
        throw ContractViolation("relay_step: state incompatible with segment start");
    RelayState out = state;
    if (b > a) {
        if (b >= state.thresholds.alpha2) out.on = true;
    } else if (b < a) {
        if (b <= state.thresholds.alpha1) out.on = false;
    }
    return out;
}

RelayState relay_run(RelayState state, double start, std::span<const double> targets) {
    double a = start;
    for (double b : targets) {
        state = relay_step(state, a, b);
        a = b;
    }
    return state;
}

}  // namespace hysir

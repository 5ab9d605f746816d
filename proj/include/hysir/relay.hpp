#pragma once

#include <optional>
#include <span>

#include "hysir/errors.hpp"

namespace hysir {

/// Switching thresholds of one non-ideal relay: a point of the triangle
/// Pi = {0 <= alpha1 < alpha2 <= 1}.
struct ThresholdPair {
    double alpha1;  ///< lower threshold (switch-off level)
    double alpha2;  ///< upper threshold (switch-on level)
};

/// Throws InvalidThresholds unless 0 <= alpha1 < alpha2 <= 1.
void validate_thresholds(const ThresholdPair& t);

/// One two-threshold lazy switch: binary state driven by a scalar input.
struct RelayState {
    ThresholdPair thresholds;
    bool on = false;
};

/// Initialize a relay against the current input value.
///
/// Outside the open band (alpha1, alpha2) the state is forced by the input;
/// a contradictory `requested` is rejected. Inside the band `requested`
/// decides (off when absent).
RelayState relay_init(const ThresholdPair& thresholds, double input_value,
                      std::optional<bool> requested = std::nullopt);

/// Advance a relay through one monotone input segment from `a` to `b`.
///
/// Precondition: the state is compatible with input value `a`. Reaching
/// alpha2 (weakly) switches on, reaching alpha1 (weakly) switches off;
/// otherwise the state is retained. A degenerate segment (a == b) is a no-op.
RelayState relay_step(const RelayState& state, double a, double b);

/// Fold relay_step over a piecewise-monotone program of target values,
/// starting from input value `start`.
RelayState relay_run(RelayState state, double start, std::span<const double> targets);

}  // namespace hysir

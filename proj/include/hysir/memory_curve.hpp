#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hysir/density.hpp"
#include "hysir/errors.hpp"

namespace hysir {

/// Reduced memory of a Preisach operator: the alternating sequence of past
/// dominant input extrema (the staircase corners), terminated by the current
/// input value. The virgin state is the empty sequence at value 0 (all
/// relays off).
///
/// Stored as one alternating vector whose last element is the current value;
/// odd length means the last move was rising, even length falling. New
/// extrema wipe out dominated corners (return-point memory); reversals
/// smaller than 1e-12 are absorbed without creating a corner.
class MemoryCurve {
public:
    MemoryCurve() : seq_{0.0} {}

    /// Rebuild a curve from completed extrema (M1, m1, M2, ...) and the
    /// current input value. Throws ContractViolation when the sequence is not
    /// strictly alternating-dominant or the current value does not fit.
    static MemoryCurve from_extrema(std::span<const double> extrema, double current);

    double current() const { return seq_.back(); }
    bool rising() const { return seq_.size() % 2 == 1; }

    /// Monotone move of the input to `target` in [0, 1].
    void move_to(double target);

    /// Completed staircase corners, dominant first. When the curve is
    /// falling, the last corner's min is the current value itself.
    struct Corner {
        double max, min;
    };
    std::size_t corner_count() const { return seq_.size() / 2; }
    Corner corner(std::size_t i) const { return {seq_[2 * i], seq_[2 * i + 1]}; }

    /// Completed extrema without the current value (config round-trip form).
    std::vector<double> extrema() const {
        return {seq_.begin(), seq_.end() - 1};
    }

    /// State of the relay with thresholds (a1, a2) encoded by this curve.
    /// Rising fronts switch on at a2 weakly; falling fronts switch off at a1
    /// weakly, matching the relay's closed switching rules.
    bool relay_on(double a1, double a2) const;

    /// Density mass of the ON region under the staircase, via telescoping
    /// corner-cumulative integrals (relay enumeration for atomic kinds).
    double on_mass(const Density& density) const;

    bool operator==(const MemoryCurve&) const = default;

private:
    void wipe_dominated();

    std::vector<double> seq_;
};

}  // namespace hysir

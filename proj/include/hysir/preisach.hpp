#pragma once

#include <span>

#include "hysir/density.hpp"
#include "hysir/memory_curve.hpp"

namespace hysir {

enum class Direction { rising, falling };

/// Preisach operator mapping the infection level I to the basic reproduction
/// number: R0 = r0_nat - (r0_nat - r0_int) * (ON mass of the relay family).
/// Output always lies in [r0_int, r0_nat]; r0_nat >= r0_int > 1.
class PreisachOperator {
public:
    PreisachOperator(Density density, double r0_nat, double r0_int,
                     MemoryCurve memory = MemoryCurve{});

    const Density& density() const { return density_; }
    double r0_nat() const { return r0_nat_; }
    double r0_int() const { return r0_int_; }
    double spread() const { return r0_nat_ - r0_int_; }
    const MemoryCurve& memory() const { return memory_; }
    void set_memory(MemoryCurve m) { memory_ = std::move(m); }

    /// Advance through one monotone input segment from `a` to `b`.
    /// Throws ContractViolation when `a` differs from the current value.
    void apply(double a, double b);

    /// Advance to `b` from the current value.
    void apply_to(double b) { memory_.move_to(b); }

    /// Fold apply_to over a piecewise-monotone program of targets.
    void run(std::span<const double> targets);

    /// Current output R0.
    double output() const;

    /// Branch value R_r(I): output after a hypothetical monotone move to I,
    /// without mutating the state. Throws DirectionMismatch when I lies on
    /// the wrong side of the current value.
    double branch_value(double I, Direction d) const;

    /// f_r(I) = I * R_r(I).
    double branch_f(double I, Direction d) const;

    /// Branch value with the direction inferred from the current value.
    double branch_at(double I) const;

    /// Lipschitz constant q0 = (r0_nat - r0_int) * sup q of the operator.
    /// Throws InvalidHypotheses for atomic densities (unbounded).
    double lipschitz_constant() const;

    /// Envelope R(I) with every relay not forced off at I switched on
    /// (the major descending branch).
    double envelope_min(double I) const;

    /// Envelope R(I) with only the relays forced on at I switched on
    /// (the virgin rising branch).
    double envelope_max(double I) const;

private:
    Density density_;
    double r0_nat_, r0_int_;
    MemoryCurve memory_;
};

/// Frozen branch of the operator: R(I) along hypothetical monotone moves from
/// the anchor (the memory's current value), defined on all of [0, 1]. Value
/// semantics; cheap to copy per integration arc.
class Branch {
public:
    explicit Branch(const PreisachOperator& op)
        : density_(op.density()), r0_nat_(op.r0_nat()), r0_int_(op.r0_int()),
          memory_(op.memory()) {}

    double anchor() const { return memory_.current(); }
    const MemoryCurve& memory() const { return memory_; }
    double r0_nat() const { return r0_nat_; }
    double r0_int() const { return r0_int_; }
    double rho_independent_spread() const { return r0_nat_ - r0_int_; }

    double operator()(double I) const {
        MemoryCurve m = memory_;
        m.move_to(I);
        return r0_nat_ - (r0_nat_ - r0_int_) * m.on_mass(density_);
    }
    double f(double I) const { return I * (*this)(I); }

private:
    Density density_;
    double r0_nat_, r0_int_;
    MemoryCurve memory_;
};

}  // namespace hysir

#pragma once

#include <Eigen/Core>
#include <vector>

#include "hysir/preisach.hpp"

namespace hysir {

/// Parameters of the normalized SIR system
///   dI/dt =  R0 S I - I
///   dS/dt = -R0 S I - rho S + rho
/// with R0 produced by the Preisach operator driven by I.
struct SirParams {
    double rho;            ///< mu / (gamma + mu), in (0, 1)
    PreisachOperator op;   ///< carries r0_nat, r0_int, density (memory unused here)
};

/// One point of the phase space: planar state plus hysteresis memory
/// compatible with the infection level (memory.current() == infected).
struct SirState {
    double infected;
    double susceptible;
    MemoryCurve memory;

    Eigen::Vector2d point() const { return {infected, susceptible}; }
};

/// Right-hand side (dI, dS) at `state`, with R0 read off the frozen memory.
Eigen::Vector2d vector_field(const SirParams& params, const SirState& state);

/// Same field along a frozen branch, for use inside one monotone arc.
Eigen::Vector2d branch_field(double rho, const Branch& branch, const Eigen::Vector2d& y);

/// The infection-free equilibrium (0, 1) with virgin memory, its local rates
/// and saddle classification (unstable whenever r0_nat > 1).
struct InfectionFreeEquilibrium {
    Eigen::Vector2d point;
    MemoryCurve memory;     ///< virgin (all relays off)
    double r0;              ///< r0_nat
    double lambda_unstable; ///< r0_nat - 1
    double lambda_stable;   ///< -(r0_nat + rho)
    bool saddle;
};
InfectionFreeEquilibrium infection_free(const SirParams& params);

/// Endemic equilibrium (I*, S*) of one branch: the unique root of
/// 1/R(I) = 1 - I/rho on [0, rho], with S* = 1/R(I*).
Eigen::Vector2d branch_endemic(double rho, const Branch& branch);
Eigen::Vector2d branch_endemic(const SirParams& params, const MemoryCurve& memory);

/// The connected continuum of endemic states: all (I, 1 - I/rho) whose
/// required reproduction number lies between the two compatibility envelopes.
struct EndemicSegment {
    double i_lo = 0.0, i_hi = 0.0;
    double rho = 0.0;

    struct Point {
        double theta, infected, susceptible, r0;
    };
    std::vector<Point> points;

    bool degenerate() const { return i_hi - i_lo <= 1e-14; }
    Point at(double theta) const;
    /// Distance-style membership test used by convergence diagnostics.
    bool contains(double infected, double susceptible, double tol) const;
};
EndemicSegment endemic_segment(const SirParams& params, int resolution = 101);

enum class EquilibriumType { focus, node };

/// Focus/node classification of the endemic equilibrium of the constant-R0
/// system: focus iff rho * R0^2 < 4 (R0 - 1) (strict).
EquilibriumType classify_focus(double r0, double rho);

}  // namespace hysir

#pragma once

#include <Eigen/Core>

#include "hysir/preisach.hpp"

namespace hysir {

/// Lyapunov function of one branch system,
///   V(I, S) = int_{I*}^{I} (1 - f(I*)/f(i)) di + int_{S*}^{S} (1 - S*/s) ds,
/// where f(i) = i R(i) along the branch and (I*, S*) is the branch's endemic
/// equilibrium. V vanishes at the equilibrium, is positive elsewhere in the
/// open quadrant and decreases along the branch flow.
class BranchLyapunov {
public:
    BranchLyapunov(double rho, Branch branch);

    double rho() const { return rho_; }
    const Branch& branch() const { return branch_; }
    double endemic_infected() const { return i_star_; }
    double endemic_susceptible() const { return s_star_; }
    double f_star() const { return f_star_; }

    double operator()(double I, double S) const { return i_part(I) + s_part(S); }

    /// int_{I*}^{I} (1 - f*/f(i)) di, adaptive quadrature at 1e-12.
    double i_part(double I) const;
    /// Closed form S - S* - S* ln(S/S*).
    double s_part(double S) const;

    // Partial derivatives (printed in the convexity lemma's proof; V_IS = 0).
    double dV_dI(double I) const;
    double dV_dS(double S) const;
    double d2V_dI2(double I) const;  // f'(I) f*/f(I)^2, f' by central difference
    double d2V_dS2(double S) const;

    /// Time derivative of V along the branch flow at (I, S), via the chain
    /// rule with the analytic partials.
    double flow_derivative(double I, double S) const;

    /// Highest point S_M >= S* of the level line V = c (its I-extremum sits
    /// at I = I*, so S_M solves s_part(S) = c). Bracket grows above 1 when
    /// needed. Throws RootBracketFailure if no bracket is found.
    double highest_level_point(double c) const;
    /// Lowest point S_m <= S* of the level line V = c.
    double lowest_level_point(double c) const;

    /// Signed curvature of the level line of V through (I, S); negative
    /// everywhere iff the sublevel sets are convex.
    double level_curvature(double I, double S) const;

private:
    double rho_;
    Branch branch_;
    double i_star_, s_star_, f_star_;
};

/// Traces the level line V = c and checks the curvature sign at n_points
/// sample stations (clamped to the operator domain I <= 1).
bool level_set_convex(const BranchLyapunov& lyap, double c, int n_points = 64);

}  // namespace hysir

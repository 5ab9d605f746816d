#include "hysir/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "hysir/quadrature.hpp"
#include "hysir/roots.hpp"
#include "hysir/sir.hpp"

namespace hysir {

BranchLyapunov::BranchLyapunov(double rho, Branch branch)
    : rho_(rho), branch_(std::move(branch)) {
    const Eigen::Vector2d e = branch_endemic(rho_, branch_);
    i_star_ = e[0];
    s_star_ = e[1];
    f_star_ = branch_.f(i_star_);
}

double BranchLyapunov::i_part(double I) const {
    if (I == i_star_) return 0.0;
    return integrate_adaptive(
        [&](double i) { return 1.0 - f_star_ / branch_.f(i); }, i_star_, I, 1e-12);
}

double BranchLyapunov::s_part(double S) const {
    return S - s_star_ - s_star_ * std::log(S / s_star_);
}

double BranchLyapunov::dV_dI(double I) const { return 1.0 - f_star_ / branch_.f(I); }

double BranchLyapunov::dV_dS(double S) const { return 1.0 - s_star_ / S; }

double BranchLyapunov::d2V_dI2(double I) const {
    const double h = std::max(1e-7, 1e-7 * std::abs(I));
    const double lo = std::max(I - h, 1e-12);
    const double hi = std::min(I + h, 1.0);
    const double fprime = (branch_.f(hi) - branch_.f(lo)) / (hi - lo);
    const double f = branch_.f(I);
    return fprime * f_star_ / (f * f);
}

double BranchLyapunov::d2V_dS2(double S) const { return s_star_ / (S * S); }

double BranchLyapunov::flow_derivative(double I, double S) const {
    const Eigen::Vector2d f = branch_field(rho_, branch_, {I, S});
    return dV_dI(I) * f[0] + dV_dS(S) * f[1];
}

double BranchLyapunov::highest_level_point(double c) const {
    if (c <= 0.0) return s_star_;
    const auto g = [&](double S) { return s_part(S) - c; };
    double hi = std::max(1.0, 2.0 * s_star_);
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e8) throw RootBracketFailure("level line has no highest point below 1e8");
    }
    return bisect(g, s_star_, hi, 1e-15, 240);
}

double BranchLyapunov::lowest_level_point(double c) const {
    if (c <= 0.0) return s_star_;
    const auto g = [&](double S) { return s_part(S) - c; };
    double lo = 1e-14;
    while (g(lo) < 0.0) {
        lo *= 1e-2;
        if (lo < 1e-290) throw RootBracketFailure("level line has no lowest point above 0");
    }
    return bisect(g, lo, s_star_, 1e-17, 280);
}

double BranchLyapunov::level_curvature(double I, double S) const {
    const double vi = dV_dI(I);
    const double vs = dV_dS(S);
    const double vii = d2V_dI2(I);
    const double vss = d2V_dS2(S);
    const double grad2 = vi * vi + vs * vs;
    return -(vss * vi * vi + vii * vs * vs) / std::pow(grad2, 1.5);
}

bool level_set_convex(const BranchLyapunov& lyap, double c, int n_points) {
    if (!(c > 0.0)) throw ContractViolation("level_set_convex requires c > 0");
    const double i_star = lyap.endemic_infected();
    // I-extent of the level line: i_part = c on both sides of I*.
    const auto h = [&](double I) { return lyap.i_part(I) - c; };
    double lo_bracket = i_star;
    while (h(lo_bracket) < 0.0 && lo_bracket > 1e-12) lo_bracket *= 0.5;
    const double i_lo = h(lo_bracket) < 0.0 ? lo_bracket : bisect(h, lo_bracket, i_star, 1e-13);
    const double i_hi = h(1.0) < 0.0 ? 1.0 : bisect(h, i_star, 1.0, 1e-13);

    const int n = std::max(n_points, 8);
    for (int k = 0; k < n; ++k) {
        const double frac = (k + 0.5) / n;
        const double I = i_lo + frac * (i_hi - i_lo);
        const double budget = c - lyap.i_part(I);
        if (budget <= 0.0) continue;  // roundoff at the extreme stations
        for (const double S : {lyap.highest_level_point(budget), lyap.lowest_level_point(budget)}) {
            if (!(lyap.level_curvature(I, S) < 0.0)) return false;
        }
    }
    return true;
}

}  // namespace hysir

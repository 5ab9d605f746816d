#include "hysir/sir.hpp"

#include <algorithm>
#include <cmath>

#include "hysir/roots.hpp"

namespace hysir {

Eigen::Vector2d branch_field(double rho, const Branch& branch, const Eigen::Vector2d& y) {
    const double I = std::clamp(y[0], 0.0, 1.0);
    const double S = y[1];
    const double r0 = branch(I);
    const double flux = r0 * S * y[0];
    return {flux - y[0], -flux - rho * S + rho};
}

Eigen::Vector2d vector_field(const SirParams& params, const SirState& state) {
    PreisachOperator op = params.op;
    op.set_memory(state.memory);
    const double r0 = op.output();
    const double flux = r0 * state.susceptible * state.infected;
    return {flux - state.infected,
            -flux - params.rho * state.susceptible + params.rho};
}

InfectionFreeEquilibrium infection_free(const SirParams& params) {
    const double r_nat = params.op.r0_nat();
    return {Eigen::Vector2d{0.0, 1.0}, MemoryCurve{}, r_nat,
            r_nat - 1.0, -(r_nat + params.rho), r_nat > 1.0};
}

Eigen::Vector2d branch_endemic(double rho, const Branch& branch) {
    // 1/R(I) increases, 1 - I/rho decreases; the root is bracketed on [0, rho]
    // because R(0) = r0_nat > 1.
    const auto h = [&](double I) { return 1.0 / branch(I) - (1.0 - I / rho); };
    const double i_star = bisect(h, 0.0, std::min(rho, 1.0), 1e-17, 240);
    return {i_star, 1.0 / branch(i_star)};
}

Eigen::Vector2d branch_endemic(const SirParams& params, const MemoryCurve& memory) {
    PreisachOperator op = params.op;
    op.set_memory(memory);
    return branch_endemic(params.rho, Branch(op));
}

EndemicSegment::Point EndemicSegment::at(double theta) const {
    const double I = i_lo + theta * (i_hi - i_lo);
    const double S = 1.0 - I / rho;
    return {theta, I, S, 1.0 / S};
}

bool EndemicSegment::contains(double infected, double susceptible, double tol) const {
    if (infected < i_lo - tol || infected > i_hi + tol) return false;
    return std::abs(susceptible - (1.0 - infected / rho)) <= tol;
}

EndemicSegment endemic_segment(const SirParams& params, int resolution) {
    const auto& op = params.op;
    const double rho = params.rho;
    const double hi_end = std::min(rho, 1.0);
    // Segment endpoints solve 1/R_env(I) = 1 - I/rho for the two envelopes.
    const auto root_for = [&](auto&& envelope) {
        const auto h = [&](double I) { return 1.0 / envelope(I) - (1.0 - I / rho); };
        return bisect(h, 0.0, hi_end, 1e-17, 240);
    };
    EndemicSegment seg;
    seg.rho = rho;
    seg.i_lo = root_for([&](double I) { return op.envelope_min(I); });
    seg.i_hi = root_for([&](double I) { return op.envelope_max(I); });
    if (seg.i_lo > seg.i_hi) std::swap(seg.i_lo, seg.i_hi);  // degenerate up to roundoff
    seg.points.reserve(std::max(resolution, 1));
    for (int k = 0; k < std::max(resolution, 1); ++k) {
        const double theta = resolution > 1 ? double(k) / double(resolution - 1) : 0.0;
        seg.points.push_back(seg.at(theta));
    }
    return seg;
}

EquilibriumType classify_focus(double r0, double rho) {
    if (!(r0 > 1.0)) throw ContractViolation("focus classification requires r0 > 1");
    return rho * r0 * r0 < 4.0 * (r0 - 1.0) ? EquilibriumType::focus : EquilibriumType::node;
}

}  // namespace hysir

#pragma once

#include <string>
#include <vector>

#include "hysir/certify.hpp"
#include "hysir/integrate.hpp"
#include "hysir/lyapunov.hpp"

namespace hysir {

/// One verified inequality: lhs <= rhs is asserted with slack, so
/// margin = rhs - lhs and pass = (margin >= -slack).
struct LemmaRecord {
    std::string lemma;
    int k;
    double lhs, rhs, margin;
    bool pass;
};

struct LemmaReport {
    std::vector<LemmaRecord> records;
    bool all_pass() const;
    std::size_t failures() const;
};

LemmaRecord make_record(std::string lemma, int k, double lhs, double rhs, double slack);

/// Lyapunov descent over one arc (Lemma on the increment of V_k between
/// consecutive switching moments, rising and falling cases).
LemmaRecord descent_increment_check(const SirParams& params, const SwitchRecord& cur,
                                    const SwitchRecord& next, double slack = 1e-8);

/// Drift of the branch endemic point across one switch: sign, bound and the
/// identity rho (S*_{k+1} - S*_k) = I*_k - I*_{k+1}.
std::vector<LemmaRecord> equilibrium_drift_check(const SirParams& params,
                                                 const SwitchRecord& cur,
                                                 const SwitchRecord& next,
                                                 double slack = 1e-8);

/// Jump between consecutive branch Lyapunov functions at the switch point:
/// bound plus the agreement of the direct and decomposed evaluations.
std::vector<LemmaRecord> branch_jump_check(const SirParams& params, const SwitchRecord& cur,
                                           const SwitchRecord& next, double slack = 1e-8);

/// Combined per-switch descent v_{k+1} - v_k <= -Q_k (I_{k+1} - I*_k)^2 with
/// the printed Q_k (rising) or Q~_k (falling).
LemmaRecord combined_descent_check(const SirParams& params, const SwitchRecord& cur,
                                   const SwitchRecord& next, double slack = 1e-8);

/// dV/dt <= -rho (S - S*)^2 / (S S*) at every sample; one record per arc
/// holding the worst sample.
std::vector<LemmaRecord> v_dot_bound_check(const SirParams& params, const Trajectory& traj,
                                           double slack = 1e-8);

/// V_k strictly decreases along samples between switches; one record per arc
/// holding the worst consecutive increment.
std::vector<LemmaRecord> v_monotone_check(const SirParams& params, const Trajectory& traj,
                                          double slack = 1e-8);

/// Trajectory lower bounds I(t) >= i0, S(t) >= s0 for t >= t_2.
std::vector<LemmaRecord> lower_bound_check(const Trajectory& traj,
                                           const StabilityCertificate& cert,
                                           double slack = 1e-8);

/// Two-sided quadratic bracketing of V_k on the samples of arc k (for t >=
/// t_2, where the i0/s0 bounds hold); one record per side and arc.
std::vector<LemmaRecord> bracketing_check(const SirParams& params, const Trajectory& traj,
                                          const StabilityCertificate& cert,
                                          double slack = 1e-8);

/// Geometric decay of the switch-point values, v_k <= v_0 p^k. Requires a
/// certified parameter set (kappa > 0); vacuous for trajectories with fewer
/// than two switches.
std::vector<LemmaRecord> geometric_decay_check(const Trajectory& traj,
                                               const StabilityCertificate& cert,
                                               double slack = 1e-8);

/// The full diagnostic suite over one trajectory. Per-switch checks run on
/// pairs k >= 1 (the initial arc is not anchored at a turning point, so the
/// per-switch lemma hypotheses do not cover it); per-sample checks run on all
/// arcs. Certificate-dependent checks are skipped for atomic densities.
LemmaReport verify_lemmas(const SirParams& params, const Trajectory& traj,
                          double slack = 1e-8);

}  // namespace hysir

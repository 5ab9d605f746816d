#include "hysir/lemma_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hysir/quadrature.hpp"

namespace hysir {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kTwoRouteTol = 1e-10;

struct SwitchPairContext {
    BranchLyapunov cur;   // V_k, branch anchored at I_k
    BranchLyapunov next;  // V_{k+1}, branch anchored at I_{k+1}
    bool rising;          // direction of the arc (t_k, t_{k+1})
    double i_next, s_next;

    SwitchPairContext(const SirParams& params, const SwitchRecord& a, const SwitchRecord& b)
        : cur(params.rho, branch_of(params, a)), next(params.rho, branch_of(params, b)),
          rising(a.rising), i_next(b.infected), s_next(b.susceptible) {}

    static Branch branch_of(const SirParams& params, const SwitchRecord& r) {
        PreisachOperator op = params.op;
        op.set_memory(r.memory);
        return Branch(op);
    }
};

double q0_of(const SirParams& params) { return params.op.lipschitz_constant(); }

}  // namespace

bool LemmaReport::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
}

std::size_t LemmaReport::failures() const {
    return std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; });
}

LemmaRecord make_record(std::string lemma, int k, double lhs, double rhs, double slack) {
    const double margin = rhs - lhs;
    return {std::move(lemma), k, lhs, rhs, margin, margin >= -slack};
}

LemmaRecord descent_increment_check(const SirParams& params, const SwitchRecord& cur,
                                    const SwitchRecord& next, double slack) {
    SwitchPairContext ctx(params, cur, next);
    const double c = ctx.cur(ctx.i_next, ctx.s_next);
    const double delta_v = c - cur.lyapunov_value;
    const double s_extreme =
        ctx.rising ? ctx.cur.highest_level_point(c) : ctx.cur.lowest_level_point(c);
    const double gap = ctx.rising ? ctx.i_next - ctx.cur.endemic_infected()
                                  : ctx.cur.endemic_infected() - ctx.i_next;
    const double integral = std::max(ctx.cur.i_part(ctx.i_next), 0.0);
    const double bound = -params.rho / 4.0 * gap * std::sqrt(s_extreme * integral);
    return make_record("descent_increment", 0, delta_v, bound, slack);
}

std::vector<LemmaRecord> equilibrium_drift_check(const SirParams& params,
                                                 const SwitchRecord& cur,
                                                 const SwitchRecord& next, double slack) {
    SwitchPairContext ctx(params, cur, next);
    const double q0 = q0_of(params);
    const double i_cur_star = ctx.cur.endemic_infected();
    const double i_next_star = ctx.next.endemic_infected();
    const double s_cur_star = ctx.cur.endemic_susceptible();
    const double s_next_star = ctx.next.endemic_susceptible();
    const double r_next_at_next_star = ctx.next.branch()(i_next_star);
    const double r_cur_at_cur_star = ctx.cur.branch()(i_cur_star);

    std::vector<LemmaRecord> out;
    const double drift = ctx.rising ? i_cur_star - i_next_star : i_next_star - i_cur_star;
    out.push_back(make_record("equilibrium_drift_sign", 0, 0.0, drift, slack));
    const double gap = ctx.rising ? ctx.i_next - i_cur_star : i_cur_star - ctx.i_next;
    const double bound =
        params.rho * q0 * gap / (r_next_at_next_star * r_cur_at_cur_star);
    out.push_back(make_record("equilibrium_drift_bound", 0, drift, bound, slack));
    const double identity =
        std::abs(params.rho * (s_next_star - s_cur_star) - (i_cur_star - i_next_star));
    out.push_back(make_record("equilibrium_drift_identity", 0, identity, 0.0, kIdentityTol));
    return out;
}

std::vector<LemmaRecord> branch_jump_check(const SirParams& params, const SwitchRecord& cur,
                                           const SwitchRecord& next, double slack) {
    SwitchPairContext ctx(params, cur, next);
    const double q0 = q0_of(params);
    const double rho = params.rho;
    const double i_cur_star = ctx.cur.endemic_infected();
    const double i_next_star = ctx.next.endemic_infected();
    const double r_cur_star = ctx.cur.branch()(i_cur_star);
    const double r_next_next_star = ctx.next.branch()(i_next_star);
    const double f_cur_star = ctx.cur.f_star();
    const double f_cur_at_next = ctx.cur.branch().f(ctx.i_next);

    const double jump = ctx.next(ctx.i_next, ctx.s_next) - ctx.cur(ctx.i_next, ctx.s_next);

    double bound;
    if (ctx.rising) {
        const double d = ctx.i_next - i_cur_star;
        bound = q0 * d * d / r_cur_star *
                (rho * rho * q0 / (r_next_next_star * r_next_next_star * f_cur_star) +
                 rho / f_cur_star + 1.0);
    } else {
        const double d = i_cur_star - ctx.i_next;
        const double r_next_at_cur_star = ctx.next.branch()(i_cur_star);
        bound = q0 * d * d *
                (rho * rho * q0 /
                     (r_next_next_star * r_next_next_star * r_cur_star * r_cur_star *
                      i_cur_star) +
                 rho * r_next_at_cur_star / (r_next_next_star * r_cur_star * f_cur_at_next) +
                 i_cur_star / f_cur_at_next);
    }

    std::vector<LemmaRecord> out;
    out.push_back(make_record("branch_jump_bound", 0, jump, bound, slack));

    // Redundant evaluation along the proof's Delta_S + Delta_I decomposition.
    const double s_cur_star = ctx.cur.endemic_susceptible();
    const double s_next_star = ctx.next.endemic_susceptible();
    const double term1 =
        (s_next_star - s_cur_star) - s_cur_star * std::log(s_next_star / s_cur_star);
    const double term2 = (s_next_star - s_cur_star) * std::log(ctx.s_next / s_next_star);
    const double delta_s = -term1 - term2;
    const double f_next_star = ctx.next.f_star();
    const auto& bcur = ctx.cur.branch();
    const auto& bnext = ctx.next.branch();
    const double int_a = integrate_adaptive(
        [&](double i) { return f_next_star / bnext.f(i) - f_cur_star / bcur.f(i); },
        i_cur_star, ctx.i_next, 1e-13);
    const double int_b = integrate_adaptive(
        [&](double i) { return 1.0 - f_next_star / bnext.f(i); }, i_cur_star, i_next_star,
        1e-13);
    const double decomposed = delta_s - int_a - int_b;
    out.push_back(
        make_record("branch_jump_two_routes", 0, std::abs(jump - decomposed), 0.0, kTwoRouteTol));
    return out;
}

LemmaRecord combined_descent_check(const SirParams& params, const SwitchRecord& cur,
                                   const SwitchRecord& next, double slack) {
    SwitchPairContext ctx(params, cur, next);
    const double q0 = q0_of(params);
    const double eps0 = params.op.r0_int() - q0;
    const double rho = params.rho;
    const double i_cur_star = ctx.cur.endemic_infected();
    const double i_next_star = ctx.next.endemic_infected();
    const double r_cur_star = ctx.cur.branch()(i_cur_star);
    const double r_next_next_star = ctx.next.branch()(i_next_star);
    const double f_cur_star = ctx.cur.f_star();
    const double f_cur_at_next = ctx.cur.branch().f(ctx.i_next);
    const double d = ctx.i_next - i_cur_star;

    const double c = ctx.cur(ctx.i_next, ctx.s_next);
    double q_factor;
    if (ctx.rising) {
        const double s_m = ctx.cur.highest_level_point(c);
        q_factor = rho / 4.0 * std::sqrt(std::max(eps0, 0.0) * s_m / (2.0 * f_cur_at_next)) -
                   q0 / r_cur_star *
                       (rho * rho * q0 / (r_next_next_star * r_next_next_star * f_cur_star) +
                        rho / f_cur_star + 1.0);
    } else {
        const double s_m = ctx.cur.lowest_level_point(c);
        const double r_next_at_cur_star = ctx.next.branch()(i_cur_star);
        q_factor = rho / 4.0 * std::sqrt(std::max(eps0, 0.0) * s_m / (2.0 * f_cur_star)) -
                   q0 * (rho * rho * q0 /
                             (r_next_next_star * r_next_next_star * r_cur_star * r_cur_star *
                              i_cur_star) +
                         rho * r_next_at_cur_star /
                             (r_next_next_star * r_cur_star * f_cur_at_next) +
                         i_cur_star / f_cur_at_next);
    }
    const double lhs = next.lyapunov_value - cur.lyapunov_value;
    const double rhs = -q_factor * d * d;
    return make_record(ctx.rising ? "combined_descent_rising" : "combined_descent_falling", 0,
                       lhs, rhs, slack);
}

namespace {

// Sample range [begin, end) of each arc. The sample at a switching moment
// closes one arc and opens the next, so it belongs to both ranges.
std::vector<std::pair<std::size_t, std::size_t>> arc_sample_ranges(const Trajectory& traj) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const auto& sw = traj.switches;
    std::size_t begin = 0;
    for (std::size_t k = 0; k < sw.size(); ++k) {
        const double t_end =
            k + 1 < sw.size() ? sw[k + 1].t : std::numeric_limits<double>::infinity();
        std::size_t end = begin;
        while (end < traj.samples.size() && traj.samples[end].t <= t_end) ++end;
        ranges.emplace_back(begin, end);
        begin = end > begin ? end - 1 : end;  // reopen from the switch sample
        while (begin < traj.samples.size() && traj.samples[begin].t < t_end) ++begin;
    }
    return ranges;
}

BranchLyapunov lyapunov_of(const SirParams& params, const SwitchRecord& r) {
    PreisachOperator op = params.op;
    op.set_memory(r.memory);
    return BranchLyapunov(params.rho, Branch(op));
}

}  // namespace

std::vector<LemmaRecord> v_dot_bound_check(const SirParams& params, const Trajectory& traj,
                                           double slack) {
    std::vector<LemmaRecord> out;
    const auto ranges = arc_sample_ranges(traj);
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        const auto [b, e] = ranges[k];
        if (b >= e) continue;
        const BranchLyapunov lyap = lyapunov_of(params, traj.switches[k]);
        const double s_star = lyap.endemic_susceptible();
        double worst_lhs = -std::numeric_limits<double>::infinity();
        double worst_rhs = 0.0;
        for (std::size_t j = b; j < e; ++j) {
            const auto& s = traj.samples[j];
            const double lhs = lyap.flow_derivative(s.infected, s.susceptible);
            const double dev = s.susceptible - s_star;
            const double rhs = -params.rho * dev * dev / (s.susceptible * s_star);
            if (lhs - rhs > worst_lhs - worst_rhs) {
                worst_lhs = lhs;
                worst_rhs = rhs;
            }
        }
        out.push_back(make_record("v_dot_bound", int(k), worst_lhs, worst_rhs, slack));
    }
    return out;
}

std::vector<LemmaRecord> v_monotone_check(const SirParams& params, const Trajectory& traj,
                                          double slack) {
    std::vector<LemmaRecord> out;
    const auto ranges = arc_sample_ranges(traj);
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        const auto [b, e] = ranges[k];
        if (b + 1 >= e) continue;
        const BranchLyapunov lyap = lyapunov_of(params, traj.switches[k]);
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t j = b; j + 1 < e; ++j) {
            const auto& s0 = traj.samples[j];
            const auto& s1 = traj.samples[j + 1];
            const double dv = integrate_adaptive(
                                  [&](double i) {
                                      return 1.0 - lyap.f_star() / lyap.branch().f(i);
                                  },
                                  s0.infected, s1.infected, 1e-13) +
                              lyap.s_part(s1.susceptible) - lyap.s_part(s0.susceptible);
            worst = std::max(worst, dv);
        }
        out.push_back(make_record("v_monotone_between_switches", int(k), worst, 0.0, slack));
    }
    return out;
}

std::vector<LemmaRecord> lower_bound_check(const Trajectory& traj,
                                           const StabilityCertificate& cert, double slack) {
    std::vector<LemmaRecord> out;
    if (traj.switches.size() < 3) {
        out.push_back(make_record("lower_bound_infected", 0, 0.0, 0.0, slack));
        out.push_back(make_record("lower_bound_susceptible", 0, 0.0, 0.0, slack));
        return out;
    }
    const double t2 = traj.switches[2].t;
    double min_i = std::numeric_limits<double>::infinity();
    double min_s = std::numeric_limits<double>::infinity();
    for (const auto& s : traj.samples) {
        if (s.t < t2) continue;
        min_i = std::min(min_i, s.infected);
        min_s = std::min(min_s, s.susceptible);
    }
    out.push_back(make_record("lower_bound_infected", 0, cert.i0, min_i, slack));
    out.push_back(make_record("lower_bound_susceptible", 0, cert.s0, min_s, slack));
    return out;
}

std::vector<LemmaRecord> bracketing_check(const SirParams& params, const Trajectory& traj,
                                          const StabilityCertificate& cert, double slack) {
    std::vector<LemmaRecord> out;
    if (cert.eps0 <= 0.0 || traj.switches.size() < 3) return out;
    const auto ranges = arc_sample_ranges(traj);
    for (std::size_t k = 2; k < ranges.size(); ++k) {
        const auto [b, e] = ranges[k];
        if (b >= e) continue;
        const BranchLyapunov lyap = lyapunov_of(params, traj.switches[k]);
        const double i_star = lyap.endemic_infected();
        const double s_star = lyap.endemic_susceptible();
        double worst_low_lhs = -std::numeric_limits<double>::infinity(), worst_low_rhs = 0.0;
        double worst_up_lhs = -std::numeric_limits<double>::infinity(), worst_up_rhs = 0.0;
        for (std::size_t j = b; j < e; ++j) {
            const auto& s = traj.samples[j];
            const double v = lyap(s.infected, s.susceptible);
            const double di = s.infected - i_star;
            const double ds = s.susceptible - s_star;
            const double low = cert.eps0 * di * di / (2.0 * cert.r0_nat) + ds * ds / 2.0;
            const double up =
                cert.r0_nat * di * di / (2.0 * cert.i0 * cert.r0_int) + ds * ds / (2.0 * cert.s0);
            if (low - v > worst_low_lhs - worst_low_rhs) {
                worst_low_lhs = low;
                worst_low_rhs = v;
            }
            if (v - up > worst_up_lhs - worst_up_rhs) {
                worst_up_lhs = v;
                worst_up_rhs = up;
            }
        }
        out.push_back(make_record("bracketing_lower", int(k), worst_low_lhs, worst_low_rhs, slack));
        out.push_back(make_record("bracketing_upper", int(k), worst_up_lhs, worst_up_rhs, slack));
    }
    return out;
}

std::vector<LemmaRecord> geometric_decay_check(const Trajectory& traj,
                                               const StabilityCertificate& cert,
                                               double slack) {
    std::vector<LemmaRecord> out;
    if (traj.switches.size() < 2) {
        out.push_back(make_record("geometric_decay", 0, 0.0, 0.0, slack));
        return out;
    }
    const long double p = (long double)(cert.a + cert.b) /
                          ((long double)(cert.a) + (long double)(cert.b) + (long double)(cert.kappa));
    const double v0 = traj.switches[0].lyapunov_value;
    double worst_lhs = -std::numeric_limits<double>::infinity(), worst_rhs = 0.0;
    int worst_k = 0;
    for (std::size_t k = 1; k < traj.switches.size(); ++k) {
        const double vk = traj.switches[k].lyapunov_value;
        const double bound = double((long double)(v0)*powl(p, (long double)(k)));
        if (vk - bound > worst_lhs - worst_rhs) {
            worst_lhs = vk;
            worst_rhs = bound;
            worst_k = int(k);
        }
    }
    out.push_back(make_record("geometric_decay", worst_k, worst_lhs, worst_rhs, slack));
    return out;
}

LemmaReport verify_lemmas(const SirParams& params, const Trajectory& traj, double slack) {
    LemmaReport report;
    const auto add = [&](LemmaRecord r, int k) {
        r.k = k;
        report.records.push_back(std::move(r));
    };

    const bool bounded = params.op.density().bounded();
    // Per-switch checks on pairs anchored at genuine turning points (k >= 1).
    if (bounded) {
        for (std::size_t k = 1; k + 1 < traj.switches.size(); ++k) {
            const auto& cur = traj.switches[k];
            const auto& next = traj.switches[k + 1];
            add(descent_increment_check(params, cur, next, slack), int(k));
            for (auto& r : equilibrium_drift_check(params, cur, next, slack)) add(r, int(k));
            for (auto& r : branch_jump_check(params, cur, next, slack)) add(r, int(k));
            add(combined_descent_check(params, cur, next, slack), int(k));
        }
    }

    for (auto& r : v_dot_bound_check(params, traj, slack)) report.records.push_back(r);
    for (auto& r : v_monotone_check(params, traj, slack)) report.records.push_back(r);

    if (bounded) {
        const StabilityCertificate cert = compute_certificate(params);
        for (auto& r : lower_bound_check(traj, cert, slack)) report.records.push_back(r);
        for (auto& r : bracketing_check(params, traj, cert, slack)) report.records.push_back(r);
        if (cert.certified)
            for (auto& r : geometric_decay_check(traj, cert, slack)) report.records.push_back(r);
    }
    return report;
}

}  // namespace hysir

#include "hysir/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hysir/lyapunov.hpp"
#include "hysir/roots.hpp"

namespace hysir {

namespace {

using Vec2 = Eigen::Vector2d;

// Dormand-Prince 5(4) pair with the standard quartic dense-output interpolant.
struct Dopri5Step {
    Vec2 y_new;
    Vec2 k1, k3, k4, k5, k6, k7;
    double err;  // scaled error norm; accept when <= 1
};

template <typename Rhs>
Dopri5Step dopri5_step(Rhs&& f, const Vec2& y, double t, double h, const Vec2& k1,
                       double atol, double rtol) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Dopri5Step s;
    s.k1 = k1;
    const Vec2 k2 = f(t + h * a21, y + h * (a21 * s.k1));
    s.k3 = f(t + h * 0.3, y + h * (a31 * s.k1 + a32 * k2));
    s.k4 = f(t + h * 0.8, y + h * (a41 * s.k1 + a42 * k2 + a43 * s.k3));
    s.k5 = f(t + h * (8.0 / 9), y + h * (a51 * s.k1 + a52 * k2 + a53 * s.k3 + a54 * s.k4));
    s.k6 = f(t + h, y + h * (a61 * s.k1 + a62 * k2 + a63 * s.k3 + a64 * s.k4 + a65 * s.k5));
    s.y_new = y + h * (a71 * s.k1 + a73 * s.k3 + a74 * s.k4 + a75 * s.k5 + a76 * s.k6);
    s.k7 = f(t + h, s.y_new);

    const Vec2 e = h * (e1 * s.k1 + e3 * s.k3 + e4 * s.k4 + e5 * s.k5 + e6 * s.k6 + e7 * s.k7);
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(s.y_new[i]));
        acc += (e[i] / sc) * (e[i] / sc);
    }
    s.err = std::sqrt(0.5 * acc);
    return s;
}

// Quartic interpolant over one accepted step, theta in [0, 1].
struct DenseOutput {
    Vec2 r1, r2, r3, r4, r5;
    double t0, h;

    DenseOutput(const Vec2& y_old, double t, double step, const Dopri5Step& s) {
        static constexpr double d1 = -12715105075.0 / 11282082432.0;
        static constexpr double d3 = 87487479700.0 / 32700410799.0;
        static constexpr double d4 = -10690763975.0 / 1880347072.0;
        static constexpr double d5 = 701980252875.0 / 199316789632.0;
        static constexpr double d6 = -1453857185.0 / 822651844.0;
        static constexpr double d7 = 69997945.0 / 29380423.0;
        t0 = t;
        h = step;
        const Vec2 ydiff = s.y_new - y_old;
        r1 = y_old;
        r2 = ydiff;
        r3 = h * s.k1 - ydiff;
        r4 = ydiff - h * s.k7 - r3;
        r5 = h * (d1 * s.k1 + d3 * s.k3 + d4 * s.k4 + d5 * s.k5 + d6 * s.k6 + d7 * s.k7);
    }

    Vec2 at_time(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

struct Arc {
    Branch branch;
    bool rising;
    double sign() const { return rising ? 1.0 : -1.0; }
    // Signed event function: positive strictly inside the arc, crosses zero
    // when the trajectory reaches the branch nullcline R(I) S = 1.
    double s_of(const Vec2& y) const {
        return sign() * (branch(std::clamp(y[0], 0.0, 1.0)) * y[1] - 1.0);
    }
};

double nearest_threshold(const Density& density, double I, bool rising) {
    double best = std::numeric_limits<double>::quiet_NaN();
    double dist = 1e-9;
    for (const auto& a : density.atoms()) {
        const double th = rising ? a.alpha2 : a.alpha1;
        if (std::abs(th - I) <= dist) {
            dist = std::abs(th - I);
            best = th;
        }
    }
    return best;
}

}  // namespace

std::vector<double> Trajectory::switch_times() const {
    std::vector<double> t;
    t.reserve(switches.size());
    for (const auto& s : switches) t.push_back(s.t);
    return t;
}

Trajectory integrate(const SirParams& params, const SirState& initial, double t_max,
                     const IntegratorConfig& cfg) {
    const double rho = params.rho;
    if (!(initial.infected > 0.0) || !(initial.susceptible > 0.0) ||
        !(initial.infected + initial.susceptible <= 1.0 + 1e-12))
        throw ContractViolation("initial state must satisfy I > 0, S > 0, I + S <= 1");
    if (std::abs(initial.memory.current() - initial.infected) > 1e-9)
        throw ContractViolation("initial memory is not compatible with I(0)");

    PreisachOperator op = params.op;
    op.set_memory(initial.memory);

    Trajectory traj;
    double t = 0.0;
    Vec2 y{initial.infected, initial.susceptible};
    double rtol = cfg.rtol, atol = cfg.atol;
    bool tolerances_halved = false;

    const auto make_arc = [&](bool rising) { return Arc{Branch(op), rising}; };

    // Direction of the first arc: sign of dI/dt, broken by dS/dt on the
    // nullcline itself (the event function moves with S there).
    const auto initial_direction = [&]() {
        const double g = op.output() * y[1] - 1.0;
        if (std::abs(g) > 1e-13) return g > 0.0;
        return rho * (1.0 - y[1]) - y[0] > 0.0;
    };

    Arc arc = make_arc(initial_direction());

    const auto record_switch = [&](double tk) {
        BranchLyapunov lyap(rho, arc.branch);
        traj.switches.push_back({tk, y[0], y[1], op.memory(), arc.rising,
                                 lyap.endemic_infected(), lyap.endemic_susceptible(),
                                 lyap(y[0], y[1])});
    };
    const auto push_sample = [&](double ts, const Vec2& ys, bool at_switch) {
        traj.samples.push_back({ts, ys[0], ys[1], arc.branch(std::clamp(ys[0], 0.0, 1.0)),
                                at_switch});
    };

    record_switch(0.0);
    push_sample(0.0, y, false);

    const auto rhs = [&](double, const Vec2& v) { return branch_field(rho, arc.branch, v); };

    const auto converged = [&](const Vec2& v) {
        if (branch_field(rho, arc.branch, v).lpNorm<Eigen::Infinity>() >= cfg.field_tol)
            return false;
        const auto& sw = traj.switches;
        if (sw.size() < 2) return true;
        return std::abs(sw.back().lyapunov_value - sw[sw.size() - 2].lyapunov_value) <
               cfg.lyapunov_tol;
    };

    // Same-direction return-map bookkeeping for orbit detection.
    int consistent_returns = 0;

    const auto finish = [&](Outcome outcome) {
        traj.outcome = outcome;
        traj.final_time = t;
        traj.final_state = {y[0], y[1], op.memory()};
        if (traj.samples.empty() || traj.samples.back().t != t) push_sample(t, y, false);
        return traj;
    };

    if (converged(y)) return finish(Outcome::converged);

    double h = std::min(cfg.max_step, 1e-3);
    Vec2 k1 = rhs(t, y);
    std::size_t steps = 0;

    while (t < t_max) {
        if (t_max - t < 1e-12 * std::max(1.0, t_max)) break;
        if (++steps > cfg.max_steps) throw StepFailure("step budget exhausted");
        h = std::min(h, t_max - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepFailure("step size underflow at t = " + std::to_string(t));

        const Dopri5Step s = dopri5_step(rhs, y, t, h, k1, atol, rtol);
        if (!s.y_new.allFinite()) throw NonFiniteState("non-finite state at t = " + std::to_string(t));
        if (!(s.err <= 1.0)) {  // rejects NaN error norms as well
            const double fac = std::isfinite(s.err) ? 0.9 * std::pow(s.err, -0.2) : 0.2;
            h *= std::clamp(fac, 0.2, 1.0);
            continue;
        }

        const DenseOutput dense(y, t, h, s);

        // Scan the step for the first sign change of the event function.
        std::optional<std::pair<double, double>> bracket;
        bool left_end_inside_arc = arc.s_of(y) > 0.0;
        {
            double prev_t = t;
            bool prev_inside = left_end_inside_arc;
            for (int i = 1; i <= 8; ++i) {
                const double ti = t + h * (double(i) / 8.0);
                if (arc.s_of(dense.at_time(ti)) < 0.0) {
                    bracket = {prev_t, ti};
                    left_end_inside_arc = prev_inside;
                    break;
                }
                prev_t = ti;
                prev_inside = true;
            }
        }

        if (!bracket) {
            t += h;
            y = s.y_new;
            k1 = s.k7;  // FSAL
            push_sample(t, y, false);
            if (converged(y)) return finish(Outcome::converged);
            const double fac = s.err > 0.0 ? 0.9 * std::pow(s.err, -0.2) : 5.0;
            h = std::min(cfg.max_step, h * std::clamp(fac, 0.2, 5.0));
            continue;
        }

        // Localize the switching moment on the dense output. A bracket whose
        // left end never entered the arc means the trajectory re-crossed the
        // nullcline immediately; fall through to the chatter guard.
        double t_event = bracket->first;
        if (left_end_inside_arc) {
            const auto [lo, hi] = bisect_bracket(
                [&](double tt) { return arc.s_of(dense.at_time(tt)); }, bracket->first,
                bracket->second, cfg.event_tol);
            (void)lo;
            t_event = hi;
        }
        Vec2 y_event = dense.at_time(t_event);
        y_event[0] = std::clamp(y_event[0], 0.0, 1.0);

        // Atomic densities switch on relay thresholds; land exactly on them so
        // the relay's weak switching inequality fires in the committed memory.
        if (params.op.density().kind() == Density::Kind::atomic) {
            const double th = nearest_threshold(params.op.density(), y_event[0], arc.rising);
            if (std::isfinite(th)) y_event[0] = th;
        }

        const double gap = t_event - traj.switches.back().t;
        if (gap < cfg.chatter_gap) {
            traj.grazing_flagged = true;
            if (tolerances_halved)
                throw StepFailure("chattering events at t = " + std::to_string(t_event) +
                                  " (possible grazing contact with the nullcline)");
            tolerances_halved = true;
            rtol *= 0.5;
            atol *= 0.5;
            h *= 0.5;
            continue;
        }

        t = t_event;
        y = y_event;
        op.apply_to(y[0]);  // commit the completed monotone segment
        arc = make_arc(!arc.rising);
        record_switch(t);
        push_sample(t, y, true);
        k1 = rhs(t, y);

        // Return map on same-direction switch points.
        const auto& sw = traj.switches;
        const std::size_t n = sw.size();
        if (n >= 3) {
            const auto& cur = sw[n - 1];
            const auto& ret = sw[n - 3];
            const double residual = std::max(std::abs(cur.infected - ret.infected),
                                             std::abs(cur.susceptible - ret.susceptible));
            traj.return_residuals.push_back(residual);
            const double amplitude = std::abs(cur.infected - sw[n - 2].infected);
            if (residual < cfg.orbit_tol && amplitude > cfg.orbit_min_amplitude)
                ++consistent_returns;
            else
                consistent_returns = 0;
            if (cfg.detect_orbit && consistent_returns >= cfg.orbit_returns)
                return finish(Outcome::orbit);
        }

        if (converged(y)) return finish(Outcome::converged);
        h = std::min(cfg.max_step, std::max(h * 0.5, 1e-6));
    }

    t = t_max;
    return finish(converged(y) ? Outcome::converged : Outcome::timeout);
}

}  // namespace hysir

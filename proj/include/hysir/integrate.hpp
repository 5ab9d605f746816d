#pragma once

#include <cstddef>
#include <vector>

#include "hysir/sir.hpp"

namespace hysir {

struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double event_tol = 1e-10;          ///< switch localization window (time)
    double max_step = 1.0;
    double field_tol = 1e-10;          ///< convergence: ||(dI,dS)|| below this
    double lyapunov_tol = 1e-12;       ///< convergence: |v_k - v_{k-1}| below this
    double chatter_gap = 1e-9;         ///< consecutive events closer than this flag grazing
    double orbit_tol = 1e-8;           ///< return-map residual threshold
    double orbit_min_amplitude = 1e-4; ///< minimum |I_k - I_{k-1}| for an orbit
    int orbit_returns = 8;             ///< consistent returns before declaring an orbit
    bool detect_orbit = true;
    std::size_t max_steps = 50'000'000;
};

struct TrajectorySample {
    double t;
    double infected, susceptible, r0;
    bool at_switch;
};

/// State at one switching moment t_k: the branch r(t_k) active on
/// (t_k, t_{k+1}), its endemic point and Lyapunov value. Index 0 is the
/// initial state (t_0 = 0).
struct SwitchRecord {
    double t;
    double infected, susceptible;
    MemoryCurve memory;          ///< state function committed at t_k
    bool rising;                 ///< direction of I on the arc starting here
    double endemic_infected, endemic_susceptible;
    double lyapunov_value;       ///< V_k(I_k, S_k)
};

enum class Outcome { converged, orbit, timeout };

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<SwitchRecord> switches;
    std::vector<double> switch_times() const;
    std::vector<double> return_residuals;  ///< same-direction switch-point return gaps
    Outcome outcome = Outcome::timeout;
    bool grazing_flagged = false;
    double final_time = 0.0;
    SirState final_state;
};

/// Integrate the switched system from `initial` until t_max, convergence, or
/// a detected periodic orbit. Between events the memory is frozen and the
/// planar branch system is integrated with an adaptive Dormand-Prince 5(4)
/// pair; an event fires when dI/dt changes sign (R_r(I) S crosses 1), the
/// completed monotone segment is committed to the memory and a new branch
/// starts.
Trajectory integrate(const SirParams& params, const SirState& initial, double t_max,
                     const IntegratorConfig& cfg = {});

}  // namespace hysir

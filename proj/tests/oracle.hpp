#pragma once

// Brute-force reference implementations used only by tests. Deliberately
// obvious and independent of the memory-curve / corner-cumulative code paths
// they are checking; the only shared vocabulary is the domain types.

#include <random>
#include <span>
#include <vector>

#include "hysir/density.hpp"
#include "hysir/integrate.hpp"
#include "hysir/sir.hpp"

namespace hysir::oracle {

/// Relay ensemble on an N-per-axis triangle grid. Each cell of [0,1]^2 that
/// meets the triangle contributes one relay at (the triangle part of) its
/// centroid, weighted with the exact density mass of the cell's triangle
/// part. Every relay is stepped independently through the program with the
/// bare two-threshold rules.
class RelayEnsemble {
public:
    RelayEnsemble(const Density& density, int n);

    void run(std::span<const double> program);  // from the virgin state at 0
    double on_mass() const;
    double output(double r0_nat, double r0_int) const {
        return r0_nat - (r0_nat - r0_int) * on_mass();
    }
    std::size_t size() const { return relays_.size(); }
    bool state(std::size_t i) const { return on_[i]; }
    double alpha1(std::size_t i) const { return relays_[i].a1; }
    double alpha2(std::size_t i) const { return relays_[i].a2; }

private:
    struct R {
        double a1, a2, w;
    };
    std::vector<R> relays_;
    std::vector<char> on_;
};

/// Ensemble output after a program, from the virgin state.
double ensemble_output(const Density& density, double r0_nat, double r0_int, int n,
                       std::span<const double> program);

/// Endemic-segment endpoints for the uniform density from first principles:
/// scan an I-grid for admissibility of the required reproduction number
/// between the closed-form envelope masses, then refine the envelope
/// equations by bisection.
struct SegmentEndpoints {
    double i_lo, i_hi;
};
SegmentEndpoints dense_segment_scan(double r0_nat, double r0_int, double rho,
                                    int grid_points);

/// Fixed-step RK4 integration of the switched system with per-step event
/// bisection. Obvious and slow; checks the adaptive event integrator.
struct FixedStepResult {
    double infected, susceptible;
    int switches;
};
FixedStepResult fixed_step_integrate(const SirParams& params, const SirState& initial,
                                     double dt, double t_max);

/// Seeded random piecewise-monotone program of target values in [0, 1].
std::vector<double> random_program(std::mt19937_64& rng, int max_segments);

}  // namespace hysir::oracle

#pragma once

#include <cmath>
#include <limits>

#include "hysir/sir.hpp"

namespace hysir {

/// The explicit constants of the global-stability estimate chain, evaluated
/// from (r0_nat, delta = r0_nat - r0_int, rho, sup q). Scalar-templated so
/// the certificate can run in extended precision: i0 is exponentially small
/// and sits in denominators, so double can flip kappa's sign spuriously.
/// Parameterized by delta rather than r0_int because q0 = delta * sup_q must
/// stay accurate for spreads far below one ulp of r0_nat.
template <typename Scalar>
struct CertificateTerms {
    Scalar q0, eps0, i0, s0, kappa, a, b, p;
};

template <typename Scalar>
CertificateTerms<Scalar> certificate_terms_delta(Scalar r_nat, Scalar delta, Scalar rho,
                                                 Scalar sup_q) {
    using std::exp;
    using std::sqrt;
    const Scalar r_int = r_nat - delta;
    CertificateTerms<Scalar> c;
    c.q0 = delta * sup_q;
    c.eps0 = r_int - c.q0;
    c.s0 = exp(-(Scalar(1) + Scalar(2) * r_nat)) / r_nat;
    c.i0 = rho * (r_int - Scalar(1)) / r_int *
           exp(-(Scalar(2) / (rho * (r_int - Scalar(1))) + Scalar(1) / r_int) * r_nat);
    if (c.eps0 >= Scalar(0)) {
        c.kappa = rho / Scalar(4) * sqrt(c.eps0 * c.s0 / (Scalar(2) * r_nat)) -
                  c.q0 / (c.i0 * r_int) *
                      (rho * rho * c.q0 / (r_int * r_int * r_int) +
                       rho * r_nat / (r_int * r_int) + Scalar(1));
    } else {
        c.kappa = -std::numeric_limits<Scalar>::infinity();
    }
    c.a = r_nat / (Scalar(2) * c.i0 * r_int) +
          c.q0 / (Scalar(2) * c.s0 * r_int * r_int);
    c.b = c.q0 / r_int *
          (rho * rho * c.q0 / (c.i0 * r_int * r_int * r_int) + rho / (c.i0 * r_int) +
           Scalar(1));
    c.p = (c.a + c.b) / (c.a + c.b + c.kappa);
    return c;
}

template <typename Scalar>
CertificateTerms<Scalar> certificate_terms(Scalar r_nat, Scalar r_int, Scalar rho,
                                           Scalar sup_q) {
    return certificate_terms_delta(r_nat, r_nat - r_int, rho, sup_q);
}

/// Verdict of the global-stability certificate: certified iff eps0 > 0 and
/// kappa > 0, in which case p lies in (0, 1) and the switch-point Lyapunov
/// values decay geometrically.
struct StabilityCertificate {
    double r0_nat, r0_int, rho, sup_q;
    double q0, eps0, i0, s0, kappa, a, b, p;
    bool certified;
    double delta_star;  ///< largest certified spread at these (r0_nat, rho, sup q)
};

/// Evaluates the certificate in extended precision. Throws InvalidHypotheses
/// for atomic densities, r0_int <= 1, or r0_nat < r0_int.
StabilityCertificate compute_certificate(const SirParams& params);

/// Largest spread delta = r0_nat - r0_int with kappa > 0, by bisection on the
/// certified predicate; `rel_tol` is relative (the certified interval spans
/// many orders of magnitude across parameter sets). Throws NoCertifiedInterval
/// when even delta -> 0+ is not certified (cannot happen for r0_nat > 1).
double delta_threshold(double r0_nat, double rho, double sup_q, double rel_tol = 1e-9);

/// kappa at the given spread, in extended precision (for sweep columns and
/// threshold straddle checks).
long double kappa_at_delta(double r0_nat, long double delta, double rho, double sup_q);

}  // namespace hysir

#include "hysir/certify.hpp"

#include <string>

namespace hysir {

namespace {

bool certified_at_delta(long double r_nat, long double delta, long double rho,
                        long double sup_q) {
    const auto c = certificate_terms_delta<long double>(r_nat, delta, rho, sup_q);
    return c.eps0 > 0.0L && c.kappa > 0.0L;
}

}  // namespace

long double kappa_at_delta(double r0_nat, long double delta, double rho, double sup_q) {
    return certificate_terms_delta<long double>(r0_nat, delta, rho, sup_q).kappa;
}

StabilityCertificate compute_certificate(const SirParams& params) {
    const auto sup = params.op.density().sup();
    if (!sup)
        throw InvalidHypotheses(
            "atomic densities are outside the stability theorem's hypotheses "
            "(the density is unbounded)");
    const double r_nat = params.op.r0_nat();
    const double r_int = params.op.r0_int();
    if (!(r_int > 1.0))
        throw InvalidHypotheses("certificate requires r0_int > 1");
    if (!(r_nat >= r_int))
        throw InvalidHypotheses("certificate requires r0_nat >= r0_int");

    const auto c = certificate_terms<long double>(r_nat, r_int, params.rho, *sup);
    StabilityCertificate out;
    out.r0_nat = r_nat;
    out.r0_int = r_int;
    out.rho = params.rho;
    out.sup_q = *sup;
    out.q0 = double(c.q0);
    out.eps0 = double(c.eps0);
    out.i0 = double(c.i0);
    out.s0 = double(c.s0);
    out.kappa = double(c.kappa);
    out.a = double(c.a);
    out.b = double(c.b);
    out.p = double(c.p);
    out.certified = c.eps0 > 0.0L && c.kappa > 0.0L;
    out.delta_star = delta_threshold(r_nat, params.rho, *sup);
    return out;
}

double delta_threshold(double r0_nat, double rho, double sup_q, double rel_tol) {
    if (!(r0_nat > 1.0)) throw InvalidHypotheses("delta_threshold requires r0_nat > 1");
    const long double width = (long double)(r0_nat)-1.0L;
    // kappa -> (rho/4) sqrt(eps0 s0 / 2 r_nat) > 0 as delta -> 0, but the
    // certified neighborhood can be astronomically small (the negative term
    // scales like delta / i0 with i0 doubly-exponentially small); scan down
    // geometrically for a certified bracket end.
    long double lo = width * 1e-6L;
    while (!certified_at_delta(r0_nat, lo, rho, sup_q)) {
        lo *= 1e-6L;
        if (lo < 1e-4000L)
            throw NoCertifiedInterval("kappa <= 0 even as delta -> 0 at r0_nat = " +
                                      std::to_string(r0_nat));
    }
    long double hi = width * (1.0L - 1e-15L);
    if (certified_at_delta(r0_nat, hi, rho, sup_q)) return double(hi);
    for (int i = 0; i < 400 && (hi - lo) > rel_tol * lo; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (certified_at_delta(r0_nat, mid, rho, sup_q))
            lo = mid;
        else
            hi = mid;
    }
    return double(0.5L * (lo + hi));
}

}  // namespace hysir

#pragma once

#include <cmath>
#include <utility>

#include "hysir/errors.hpp"

namespace hysir {

/// Locate a sign change of f on [lo, hi] by bisection.
///
/// Requires f(lo) and f(hi) of opposite (or zero) sign. Robust to jump
/// discontinuities: it converges to the sign-change locus even when f has no
/// zero there. Returns the midpoint of the final bracket.
template <typename F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-15, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw RootBracketFailure("bisect: no sign change on bracket");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Bisection returning the final bracket [lo, hi] instead of the midpoint.
template <typename F>
std::pair<double, double> bisect_bracket(F&& f, double lo, double hi, double xtol,
                                         int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if ((flo > 0) == (fhi > 0) && flo != 0.0 && fhi != 0.0)
        throw RootBracketFailure("bisect_bracket: no sign change on bracket");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

}  // namespace hysir

#pragma once

// Shared builders for the test suites.

#include <random>
#include <vector>

#include "hysir/density.hpp"
#include "hysir/preisach.hpp"
#include "hysir/sir.hpp"

namespace hysir::test {

inline PreisachOperator uniform_op(double r0_nat = 2.0, double r0_int = 1.5) {
    return PreisachOperator(Density::uniform(), r0_nat, r0_int);
}

inline SirParams uniform_params(double r0_nat, double r0_int, double rho) {
    return {rho, uniform_op(r0_nat, r0_int)};
}

inline SirParams constant_params(double r0, double rho) {
    // delta = 0: the operator output is constantly r0.
    return {rho, PreisachOperator(Density::uniform(), r0, r0)};
}

/// A mildly uneven positive 8x8 grid density (values before normalization).
inline Density bumpy_grid(std::size_t n = 8) {
    std::vector<double> values(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            values[j * n + i] = 1.0 + 0.5 * double((i * 7 + j * 3) % 5) / 4.0;
    return Density::grid(n, n, values);
}

inline Density single_relay(double a1, double a2) {
    return Density::atomic({{a1, a2, 1.0}});
}

inline SirState grown_from_zero(double infected, double susceptible) {
    MemoryCurve memory;
    memory.move_to(infected);
    return {infected, susceptible, memory};
}

/// Random interior initial state with a virgin history risen to I0.
inline SirState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> id(0.01, 0.6);
    const double i0 = id(rng);
    std::uniform_real_distribution<double> sd(0.05, 1.0 - i0 - 0.01);
    return grown_from_zero(i0, sd(rng));
}

}  // namespace hysir::test

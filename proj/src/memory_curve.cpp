#include "hysir/memory_curve.hpp"

#include <cmath>
#include <string>

namespace hysir {

namespace {
constexpr double kMergeTol = 1e-12;  // reversals below this do not open a corner
}

MemoryCurve MemoryCurve::from_extrema(std::span<const double> extrema, double current) {
    MemoryCurve c;
    c.seq_.assign(extrema.begin(), extrema.end());
    c.seq_.push_back(current);
    const auto& s = c.seq_;
    for (double v : s)
        if (!(v >= 0.0 && v <= 1.0))
            throw ContractViolation("memory extrema must lie in [0, 1]");
    // Even positions are maxima (strictly decreasing), odd positions minima
    // (strictly increasing); every max dominates every later value.
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const bool i_is_max = i % 2 == 0;
        if (i_is_max ? !(s[i] > s[i + 1]) : !(s[i] < s[i + 1]))
            throw ContractViolation("memory extrema must alternate strictly");
        if (i + 2 < s.size()) {
            if (i_is_max ? !(s[i] > s[i + 2]) : !(s[i] < s[i + 2]))
                throw ContractViolation("memory extrema must be nested (dominance order)");
        }
    }
    return c;
}

void MemoryCurve::wipe_dominated() {
    const bool up = rising();
    while (seq_.size() >= 3) {
        const std::size_t n = seq_.size();
        const double prev_same_direction = seq_[n - 3];
        const bool dominated = up ? seq_[n - 1] >= prev_same_direction
                                  : seq_[n - 1] <= prev_same_direction;
        if (!dominated) break;
        seq_.erase(seq_.begin() + long(n) - 3, seq_.begin() + long(n) - 1);
    }
}

void MemoryCurve::move_to(double target) {
    if (!(target >= 0.0 && target <= 1.0))
        throw ContractViolation("memory input must lie in [0, 1], got " +
                                std::to_string(target));
    const double v = current();
    if (target == v) return;
    const bool up = target > v;
    if (!up && target == 0.0) {
        // every relay has alpha1 >= 0, so falling to 0 restores the virgin state
        seq_ = {0.0};
        return;
    }
    if (up == rising()) {
        seq_.back() = target;
    } else if (std::abs(target - v) <= kMergeTol) {
        seq_.back() = target;  // absorb a sub-resolution reversal
    } else {
        seq_.push_back(target);
    }
    wipe_dominated();
}

bool MemoryCurve::relay_on(double a1, double a2) const {
    const std::size_t pairs = corner_count();
    for (std::size_t i = 0; i < pairs; ++i) {
        const Corner c = corner(i);
        if (a2 <= c.max && a1 < c.min) return true;
        if (a2 > c.max) break;  // corners are nested; later maxima are smaller
    }
    if (rising() && a2 <= current()) return true;
    return false;
}

double MemoryCurve::on_mass(const Density& density) const {
    if (density.kind() == Density::Kind::atomic) {
        double m = 0.0;
        for (const auto& a : density.atoms())
            if (relay_on(a.alpha1, a.alpha2)) m += a.weight;
        return m;
    }
    double mass = 0.0;
    double prev_min = -1.0;  // G(prev_min, .) == 0 before the first corner
    const std::size_t pairs = corner_count();
    for (std::size_t i = 0; i < pairs; ++i) {
        const Corner c = corner(i);
        mass += density.corner_mass(c.min, c.max);
        if (prev_min >= 0.0) mass -= density.corner_mass(prev_min, c.max);
        prev_min = c.min;
    }
    if (rising()) {
        const double v = current();
        mass += density.corner_mass(v, v);
        if (prev_min >= 0.0) mass -= density.corner_mass(prev_min, v);
    }
    return mass;
}

}  // namespace hysir

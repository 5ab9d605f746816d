#include "hysir/preisach.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace hysir {

namespace {
constexpr double kStartTol = 1e-9;  // slack on the declared segment start
}

PreisachOperator::PreisachOperator(Density density, double r0_nat, double r0_int,
                                   MemoryCurve memory)
    : density_(std::move(density)), r0_nat_(r0_nat), r0_int_(r0_int),
      memory_(std::move(memory)) {
    if (!(r0_int_ > 1.0) || !(r0_nat_ >= r0_int_) || !std::isfinite(r0_nat_))
        throw InvalidHypotheses("Preisach operator requires r0_nat >= r0_int > 1, got (" +
                                std::to_string(r0_nat_) + ", " + std::to_string(r0_int_) + ")");
}

void PreisachOperator::apply(double a, double b) {
    if (std::abs(a - memory_.current()) > kStartTol)
        throw ContractViolation("segment start " + std::to_string(a) +
                                " does not match the current input value " +
                                std::to_string(memory_.current()));
    memory_.move_to(b);
}

void PreisachOperator::run(std::span<const double> targets) {
    for (double b : targets) memory_.move_to(b);
}

double PreisachOperator::output() const {
    return r0_nat_ - spread() * memory_.on_mass(density_);
}

double PreisachOperator::branch_value(double I, Direction d) const {
    if (!(I >= 0.0 && I <= 1.0))
        throw ContractViolation("branch input outside [0, 1]");
    const double v = memory_.current();
    if (d == Direction::rising ? I < v - kStartTol : I > v + kStartTol)
        throw DirectionMismatch("branch input " + std::to_string(I) + " lies on the wrong side of " +
                                std::to_string(v));
    MemoryCurve m = memory_;
    m.move_to(I);
    return r0_nat_ - spread() * m.on_mass(density_);
}

double PreisachOperator::branch_f(double I, Direction d) const {
    return I * branch_value(I, d);
}

double PreisachOperator::branch_at(double I) const {
    return branch_value(I, I >= memory_.current() ? Direction::rising : Direction::falling);
}

double PreisachOperator::lipschitz_constant() const {
    const auto s = density_.sup();
    if (!s)
        throw InvalidHypotheses(
            "atomic densities have no bounded density; q0 is undefined and the "
            "stability theorem's hypotheses do not apply");
    return spread() * *s;
}

double PreisachOperator::envelope_min(double I) const {
    return r0_nat_ - spread() * density_.mass_alpha1_below(I);
}

double PreisachOperator::envelope_max(double I) const {
    return r0_nat_ - spread() * density_.mass_alpha2_below(I);
}

}  // namespace hysir

#include "hysir/export.hpp"

#include <charconv>

namespace hysir {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,I,S,R0,switch\n";
    for (const auto& s : traj.samples)
        os << format_double(s.t) << ',' << format_double(s.infected) << ','
           << format_double(s.susceptible) << ',' << format_double(s.r0) << ','
           << (s.at_switch ? 1 : 0) << '\n';
}

void write_segment_csv(std::ostream& os, const EndemicSegment& segment) {
    os << "theta,I,S,R0\n";
    for (const auto& p : segment.points)
        os << format_double(p.theta) << ',' << format_double(p.infected) << ','
           << format_double(p.susceptible) << ',' << format_double(p.r0) << '\n';
}

nlohmann::json lemma_report_to_json(const LemmaReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : report.records)
        arr.push_back({{"lemma", r.lemma},
                       {"k", r.k},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"margin", r.margin},
                       {"pass", r.pass}});
    return arr;
}

nlohmann::json certificate_to_json(const StabilityCertificate& c) {
    return {{"inputs",
             {{"r0_nat", c.r0_nat}, {"r0_int", c.r0_int}, {"rho", c.rho}, {"sup_q", c.sup_q}}},
            {"q0", c.q0},
            {"eps0", c.eps0},
            {"i0", c.i0},
            {"s0", c.s0},
            {"kappa", c.kappa},
            {"a", c.a},
            {"b", c.b},
            {"p", c.p},
            {"delta_star", c.delta_star},
            {"verdict", c.certified ? "certified" : "not_certified"}};
}

}  // namespace hysir

#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "hysir/certify.hpp"
#include "hysir/integrate.hpp"
#include "hysir/lemma_checks.hpp"

namespace hysir {

/// Shortest decimal representation that round-trips the IEEE-754 value.
std::string format_double(double v);

/// CSV with header t,I,S,R0,switch.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// CSV with header theta,I,S,R0.
void write_segment_csv(std::ostream& os, const EndemicSegment& segment);

nlohmann::json lemma_report_to_json(const LemmaReport& report);
nlohmann::json certificate_to_json(const StabilityCertificate& cert);

}  // namespace hysir

#pragma once

#include <iosfwd>
#include <string>

#include "ttr/types.hpp"

namespace ttr {

/// Writes the full big-M mixed-integer rescheduling model in LP text
/// format: minimize the summed delay penalties (each penalty variable is
/// lower-bounded by the late and the weighted-early expression), subject to
/// minimum run/dwell times, planned-departure floors, arrival floors per
/// the chosen profile, ordered headway on departures and downstream
/// arrivals driven by binary precedence variables, and same-platform reuse
/// gaps driven by binary track assignment variables (stations beyond the
/// origin).
///
/// StrictMilp keeps the arrival floor a >= planned + occurred everywhere,
/// so early arrivals are infeasible; Operational keeps the floor only where
/// a delay has occurred and otherwise lets arrivals run early at the
/// weighted penalty.
void export_lp(const Instance& inst, const ObjectiveConfig& cfg,
               const LpExportConfig& lp, std::ostream& os,
               ValidationProfile profile = ValidationProfile::StrictMilp);

void export_lp_file(const Instance& inst, const ObjectiveConfig& cfg,
                    const LpExportConfig& lp, const std::string& path,
                    ValidationProfile profile = ValidationProfile::StrictMilp);

}  // namespace ttr

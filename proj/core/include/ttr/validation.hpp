#pragma once

#include "ttr/types.hpp"

namespace ttr {

/// Checks a solution against every operating constraint: minimum run and
/// dwell times, planned-departure and occurred-delay lower bounds, pairwise
/// headway on departures and on arrivals (in the departure order of the
/// section, which also forbids overtaking inside a section), and platform
/// track rules (same-track reuse gap, occupancy within capacity).
///
/// The origin station has no modeled tracks; track checks start at station 1.
/// Violations are returned as data; an empty result means feasible.
std::vector<Violation> validate(const Solution& sol, const Instance& inst,
                                ValidationProfile profile);

}  // namespace ttr

#pragma once

#include "ttr/types.hpp"

namespace ttr {

/// Penalty of one arrival: (a - a*) when late, lambda * (a* - a) when early.
double delay_penalty(Minutes actual_arrival, Minutes planned_arrival,
                     const ObjectiveConfig& cfg);

/// Exact integer components of a single arrival's penalty.
Penalty delay_penalty_parts(Minutes actual_arrival, Minutes planned_arrival);

/// Sum of delay penalties over every train/station arrival, as exact parts.
/// Throws std::invalid_argument on dimension mismatch.
Penalty objective_parts(const Solution& sol, const Instance& inst);

/// Total objective J = late + lambda * early.
double objective(const Solution& sol, const Instance& inst,
                 const ObjectiveConfig& cfg);

}  // namespace ttr

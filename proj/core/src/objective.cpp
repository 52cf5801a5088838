#include "ttr/objective.hpp"

#include <stdexcept>

namespace ttr {

Penalty delay_penalty_parts(Minutes actual_arrival, Minutes planned_arrival) {
  Penalty p;
  if (actual_arrival > planned_arrival) {
    p.late = actual_arrival - planned_arrival;
  } else {
    p.early = planned_arrival - actual_arrival;
  }
  return p;
}

double delay_penalty(Minutes actual_arrival, Minutes planned_arrival,
                     const ObjectiveConfig& cfg) {
  return delay_penalty_parts(actual_arrival, planned_arrival).value(cfg);
}

Penalty objective_parts(const Solution& sol, const Instance& inst) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  if (static_cast<int>(sol.arrival.size()) != K)
    throw std::invalid_argument("solution has wrong number of trains");
  Penalty total;
  for (int k = 0; k < K; ++k) {
    if (static_cast<int>(sol.arrival[k].size()) != I)
      throw std::invalid_argument("solution has wrong number of stations");
    for (int i = 0; i < I; ++i)
      total += delay_penalty_parts(sol.arrival[k][i], inst.planned_arrival[k][i]);
  }
  return total;
}

double objective(const Solution& sol, const Instance& inst,
                 const ObjectiveConfig& cfg) {
  return objective_parts(sol, inst).value(cfg);
}

}  // namespace ttr

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttr/scheduler.hpp"
#include "ttr/types.hpp"

namespace ttr {

/// Number of trains each train passes at a station: trains that arrive
/// before it but depart after it. A departure order is workable only when no
/// train passes more than capacity-1 others, since the passed trains all
/// dwell on platforms while it goes through.
std::vector<int> overtake_counts(const std::vector<int>& departure_order,
                                 const std::vector<int>& arrival_order);

bool order_capacity_feasible(const std::vector<int>& departure_order,
                             const std::vector<int>& arrival_order,
                             int capacity);

enum class OrderRule {
  FirstComeFirstServed,      ///< depart in arrival order; always feasible
  FirstScheduledFirstServed  ///< depart in planned order; may be infeasible
};

struct OrderDecision {
  std::vector<int> order;
  bool feasible = true;
  std::string reason;
};

/// Planned departure order at a station (ties by planned arrival, then
/// index).
std::vector<int> planned_order(const Instance& inst, int station);

/// Applies a dispatching rule at one station. FCFS sorts by current arrival
/// time (ties by planned departure, then index). FSFS returns the planned
/// order together with a capacity check against the arrival order.
OrderDecision rule_order(OrderRule rule, const std::vector<Minutes>& arrivals,
                         const std::vector<int>& arrival_order,
                         const Instance& inst, int station);

/// Pipeline order providers for the two rules.
OrderProvider fcfs_provider(const Instance& inst);
OrderProvider fsfs_provider(const Instance& inst);

/// Convenience wrappers running the whole pipeline under one rule.
ScheduleResult solve_fcfs(const Instance& inst, const SchedulerOptions& opts = {});
ScheduleResult solve_fsfs(const Instance& inst, const SchedulerOptions& opts = {});

}  // namespace ttr

#include "ttr/orders.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ttr {

std::vector<int> overtake_counts(const std::vector<int>& departure_order,
                                 const std::vector<int>& arrival_order) {
  const int K = static_cast<int>(departure_order.size());
  std::vector<int> arr_pos(K), dep_pos(K);
  for (int p = 0; p < K; ++p) arr_pos[arrival_order[p]] = p;
  for (int p = 0; p < K; ++p) dep_pos[departure_order[p]] = p;
  std::vector<int> counts(K, 0);
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      if (arr_pos[a] < arr_pos[b] && dep_pos[a] > dep_pos[b]) ++counts[b];
    }
  }
  return counts;
}

bool order_capacity_feasible(const std::vector<int>& departure_order,
                             const std::vector<int>& arrival_order,
                             int capacity) {
  const auto counts = overtake_counts(departure_order, arrival_order);
  return std::all_of(counts.begin(), counts.end(),
                     [capacity](int c) { return c <= capacity - 1; });
}

std::vector<int> planned_order(const Instance& inst, int station) {
  std::vector<int> order(inst.num_trains);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.planned_departure[a][station] != inst.planned_departure[b][station])
      return inst.planned_departure[a][station] < inst.planned_departure[b][station];
    if (inst.planned_arrival[a][station] != inst.planned_arrival[b][station])
      return inst.planned_arrival[a][station] < inst.planned_arrival[b][station];
    return a < b;
  });
  return order;
}

OrderDecision rule_order(OrderRule rule, const std::vector<Minutes>& arrivals,
                         const std::vector<int>& arrival_order,
                         const Instance& inst, int station) {
  OrderDecision dec;
  if (rule == OrderRule::FirstComeFirstServed) {
    dec.order.resize(inst.num_trains);
    std::iota(dec.order.begin(), dec.order.end(), 0);
    std::sort(dec.order.begin(), dec.order.end(), [&](int a, int b) {
      if (arrivals[a] != arrivals[b]) return arrivals[a] < arrivals[b];
      if (inst.planned_departure[a][station] != inst.planned_departure[b][station])
        return inst.planned_departure[a][station] < inst.planned_departure[b][station];
      return a < b;
    });
    return dec;
  }
  dec.order = planned_order(inst, station);
  if (!order_capacity_feasible(dec.order, arrival_order,
                               inst.track_capacity[station])) {
    dec.feasible = false;
    const auto counts = overtake_counts(dec.order, arrival_order);
    const int worst = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    std::ostringstream msg;
    msg << "planned order needs train " << worst << " to pass " << counts[worst]
        << " trains at station " << station << " (capacity "
        << inst.track_capacity[station] << ")";
    dec.reason = msg.str();
  }
  return dec;
}

OrderProvider fcfs_provider(const Instance& inst) {
  return [&inst](int section, const std::vector<Minutes>& arrivals,
                 const std::vector<int>& arrival_order)
             -> std::optional<std::vector<int>> {
    return rule_order(OrderRule::FirstComeFirstServed, arrivals, arrival_order,
                      inst, section)
        .order;
  };
}

OrderProvider fsfs_provider(const Instance& inst) {
  return [&inst](int section, const std::vector<Minutes>& arrivals,
                 const std::vector<int>& arrival_order)
             -> std::optional<std::vector<int>> {
    auto dec = rule_order(OrderRule::FirstScheduledFirstServed, arrivals,
                          arrival_order, inst, section);
    if (!dec.feasible) return std::nullopt;
    return dec.order;
  };
}

ScheduleResult solve_fcfs(const Instance& inst, const SchedulerOptions& opts) {
  return run_pipeline(inst, fcfs_provider(inst), opts);
}

ScheduleResult solve_fsfs(const Instance& inst, const SchedulerOptions& opts) {
  return run_pipeline(inst, fsfs_provider(inst), opts);
}

}  // namespace ttr

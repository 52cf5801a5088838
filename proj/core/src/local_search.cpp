#include "ttr/local_search.hpp"

#include <algorithm>

#include "ttr/objective.hpp"

namespace ttr {

namespace {

std::vector<int> order_positions(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (int p = 0; p < static_cast<int>(order.size()); ++p) pos[order[p]] = p;
  return pos;
}

}  // namespace

std::optional<MoveCandidate> find_swap_candidate(const ScheduleResult& sched,
                                                 const Instance& inst,
                                                 std::mt19937_64& rng) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  if (I < 2) return std::nullopt;
  std::uniform_int_distribution<int> pick_train(0, K - 1);
  std::uniform_int_distribution<int> pick_station(1, I - 1);
  for (int attempt = 0; attempt < K * I; ++attempt) {
    const int k = pick_train(rng);
    const int i = pick_station(rng);
    const auto pos = order_positions(sched.sol.dep_order[i]);
    if (pos[k] == 0) continue;
    const int ahead = sched.sol.dep_order[i][pos[k] - 1];
    const auto prev_pos = order_positions(sched.sol.dep_order[i - 1]);
    if (prev_pos[k] < prev_pos[ahead]) {
      // k ran ahead of `ahead` one station earlier; their order flipped here.
      return MoveCandidate{k, ahead, i};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<ScheduleResult, Penalty>> try_move(
    const ScheduleResult& sched, const MoveCandidate& move,
    const Instance& inst, const SchedulerOptions& opts) {
  std::vector<std::vector<int>> orders = sched.sol.dep_order;
  auto& order = orders[move.station];
  const auto pos = order_positions(order);
  std::swap(order[pos[move.train]], order[pos[move.adjacent]]);
  auto retimed = retime_from(inst, sched, move.station, orders, opts);
  if (!retimed) return std::nullopt;
  return std::make_pair(std::move(*retimed),
                        objective_parts(retimed->sol, inst));
}

ScheduleResult local_search(const ScheduleResult& start, const Instance& inst,
                            const SearchConfig& cfg,
                            const SchedulerOptions& opts,
                            std::vector<Penalty>* trace) {
  std::mt19937_64 rng(cfg.seed);
  ScheduleResult incumbent = start;
  Penalty best = objective_parts(incumbent.sol, inst);
  if (trace) trace->push_back(best);

  for (int it = 0; it < cfg.max_iterations; ++it) {
    auto cand = find_swap_candidate(incumbent, inst, rng);
    if (!cand) break;  // no order ever changes between stations
    auto moved = try_move(incumbent, *cand, inst, opts);
    if (!moved || compare_penalty(moved->second, best, opts.objective) >= 0)
      continue;
    incumbent = std::move(moved->first);
    best = moved->second;
    if (trace) trace->push_back(best);

    // Walk the same pair downstream while it keeps improving.
    for (int i2 = cand->station + 1; i2 < inst.num_stations - 1; ++i2) {
      std::vector<std::vector<int>> orders = incumbent.sol.dep_order;
      auto& order = orders[i2];
      const auto pos = order_positions(order);
      std::swap(order[pos[cand->train]], order[pos[cand->adjacent]]);
      auto retimed = retime_from(inst, incumbent, i2, orders, opts);
      if (!retimed) break;
      const Penalty j2 = objective_parts(retimed->sol, inst);
      if (compare_penalty(j2, best, opts.objective) >= 0) break;
      incumbent = std::move(*retimed);
      best = j2;
      if (trace) trace->push_back(best);
    }
  }
  return incumbent;
}

}  // namespace ttr

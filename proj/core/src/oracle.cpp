#include "ttr/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "ttr/objective.hpp"
#include "ttr/orders.hpp"

namespace ttr {

namespace {

struct OracleSearch {
  OracleSearch(const Instance& inst_in, const OracleConfig& cfg_in,
               const SchedulerOptions& opts_in)
      : inst(inst_in), cfg(cfg_in), opts(opts_in) {}

  const Instance& inst;
  const OracleConfig& cfg;
  const SchedulerOptions& opts;
  std::uint64_t replays = 0;
  bool tripped = false;
  std::optional<Penalty> best;
  std::vector<std::vector<int>> best_orders;
  std::vector<std::vector<int>> path;

  bool count_replay() {
    if (++replays > cfg.guard) tripped = true;
    return !tripped;
  }

  void dfs(int station, const std::vector<Minutes>& arrivals,
           const std::vector<int>& arr_order, Penalty upstream) {
    if (tripped) return;
    const int I = inst.num_stations;
    if (station == I - 1) {
      if (!count_replay()) return;
      auto outcome = time_section(inst, station, arrivals, arr_order, arr_order,
                                  opts, /*terminal=*/true);
      if (!outcome.feasible) return;
      Penalty total = upstream;
      for (int k = 0; k < inst.num_trains; ++k)
        total += delay_penalty_parts(outcome.timing.arrival[k],
                                     inst.planned_arrival[k][station]);
      if (!best || compare_penalty(total, *best, opts.objective) < 0) {
        best = total;
        best_orders = path;
      }
      return;
    }

    std::vector<int> perm(inst.num_trains);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end());
    do {
      if (tripped) return;
      if (!order_capacity_feasible(perm, arr_order, inst.track_capacity[station]))
        continue;
      if (!count_replay()) return;
      auto outcome =
          time_section(inst, station, arrivals, arr_order, perm, opts, false);
      if (!outcome.feasible) continue;
      Penalty here = upstream;
      for (int k = 0; k < inst.num_trains; ++k)
        here += delay_penalty_parts(outcome.timing.arrival[k],
                                    inst.planned_arrival[k][station]);
      path.push_back(perm);
      dfs(station + 1, outcome.timing.next_arrival, perm, here);
      path.pop_back();
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

}  // namespace

OracleResult oracle_search(const Instance& inst, const OracleConfig& cfg,
                           const SchedulerOptions& opts) {
  OracleResult res;
  std::vector<Minutes> ready(inst.num_trains);
  for (int k = 0; k < inst.num_trains; ++k)
    ready[k] = inst.planned_arrival[k][0] + inst.occurred_delay[k][0];

  OracleSearch search{inst, cfg, opts};
  search.dfs(0, ready, ready_order(inst), Penalty{});
  res.replays = search.replays;
  if (search.tripped || !search.best) return res;

  // Rebuild the winning schedule through the standard pipeline so the
  // result carries the usual bookkeeping.
  const auto orders = search.best_orders;
  auto provider = [&orders](int section, const std::vector<Minutes>&,
                            const std::vector<int>&)
      -> std::optional<std::vector<int>> { return orders[section]; };
  res.schedule = run_pipeline(inst, provider, opts);
  res.objective = objective_parts(res.schedule.sol, inst);
  res.ok = res.schedule.feasible;
  return res;
}

}  // namespace ttr

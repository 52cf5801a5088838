#include "ttr/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "ttr/orders.hpp"

namespace ttr {

Minutes earliest_departure(Minutes planned_departure, Minutes arrival,
                           Minutes min_dwell,
                           std::optional<Minutes> leader_departure,
                           Minutes headway) {
  Minutes d = std::max(planned_departure, arrival + min_dwell);
  if (leader_departure) d = std::max(d, *leader_departure + headway);
  return d;
}

Minutes earliest_arrival(Minutes planned_arrival_floor, Minutes departure,
                         Minutes min_run) {
  return std::max(planned_arrival_floor, departure + min_run);
}

Minutes headway_slack(Minutes follower_arrival, Minutes leader_arrival,
                      Minutes headway) {
  return follower_arrival - leader_arrival - headway;
}

std::vector<ConflictFix> resolve_arrival_conflicts(
    std::vector<Minutes>& tentative, const std::vector<int>& departure_order,
    const std::vector<Minutes>& advance_floor,
    const std::vector<Minutes>& upstream_arrival, int downstream_station,
    Minutes headway, double lambda, SlackReference ref) {
  std::vector<ConflictFix> fixes;
  const int K = static_cast<int>(departure_order.size());
  const int window = std::max(1, static_cast<int>(std::floor(1.0 / lambda)));

  for (int idx = 1; idx < K; ++idx) {
    const int follower = departure_order[idx];
    const int leader = departure_order[idx - 1];
    const Minutes leader_ref = ref == SlackReference::NextStation
                                   ? tentative[leader]
                                   : upstream_arrival[leader];
    const Minutes slack = headway_slack(tentative[follower], leader_ref, headway);
    if (slack >= 0) continue;

    ConflictFix fix;
    fix.station = downstream_station;
    fix.leader = leader;
    fix.follower = follower;
    fix.shortfall = -slack;
    fix.leader_headroom = tentative[leader] - advance_floor[leader];

    // Chained advance limits over the trains ending at the leader. Each
    // train may run earlier only within its own headroom and without eating
    // the gap to the train ahead of it (treated as immovable at the window
    // boundary).
    const int begin = std::max(0, idx - window);
    std::vector<Minutes> limit(idx - begin, 0);
    for (int j = begin; j < idx; ++j) {
      const int t = departure_order[j];
      const Minutes headroom = tentative[t] - advance_floor[t];
      Minutes lim = headroom;
      if (j > 0) {
        const Minutes gap_ahead =
            tentative[t] - tentative[departure_order[j - 1]] - headway;
        const Minutes chain = (j == begin) ? 0 : limit[j - 1 - begin];
        lim = std::min(lim, chain + gap_ahead);
      }
      limit[j - begin] = std::max<Minutes>(lim, 0);
    }
    fix.leader_limit = limit[idx - 1 - begin];

    std::vector<Minutes> advance(idx - begin, 0);
    advance[idx - 1 - begin] = std::min(-slack, fix.leader_limit);
    for (int j = idx - 2; j >= begin; --j) {
      const Minutes gap_behind =
          tentative[departure_order[j + 1]] - tentative[departure_order[j]] - headway;
      advance[j - begin] = std::max<Minutes>(advance[j + 1 - begin] - gap_behind, 0);
    }
    for (int j = begin; j < idx; ++j) {
      if (advance[j - begin] <= 0) continue;
      const int t = departure_order[j];
      tentative[t] -= advance[j - begin];
      fix.advances.emplace_back(t, advance[j - begin]);
    }

    if (advance[idx - 1 - begin] < -slack) {
      // Advancing was not enough: push the follower and everyone behind it.
      for (int j = idx; j < K; ++j) {
        const int t = departure_order[j];
        const Minutes floor_t = tentative[departure_order[j - 1]] + headway;
        if (tentative[t] < floor_t) {
          tentative[t] = floor_t;
          fix.delayed.push_back(t);
        }
      }
    }
    fixes.push_back(std::move(fix));
  }
  return fixes;
}

namespace {

constexpr Minutes kNever = std::numeric_limits<Minutes>::max();

struct TrackState {
  int latest = -1;        ///< latest occupant, -1 when never used
  bool pending = false;   ///< latest occupant's departure not yet known
  Minutes free_from = 0;  ///< entry allowed from this time when not pending
};

}  // namespace

SectionOutcome time_section(const Instance& inst, int station,
                            const std::vector<Minutes>& arrivals_in,
                            const std::vector<int>& arrival_order,
                            const std::vector<int>& departure_order,
                            const SchedulerOptions& opts, bool terminal) {
  const int K = inst.num_trains;
  const Minutes h = inst.headway;
  SectionOutcome out;
  SectionTiming& tm = out.timing;
  tm.arrival.assign(K, 0);
  tm.departure.assign(K, 0);
  tm.track.assign(K, -1);

  std::vector<TrackState> tracks(inst.track_capacity[station]);
  std::vector<char> entered(K, 0), determined(K, 0);
  std::vector<int> dep_pos(K);
  for (int p = 0; p < K; ++p) dep_pos[departure_order[p]] = p;

  std::mt19937_64 rng(opts.rng_seed + 0x9e3779b97f4a7c15ULL * (station + 1));

  int dep_cursor = 0;
  auto determine_departures = [&] {
    while (dep_cursor < K) {
      const int t = departure_order[dep_cursor];
      if (!entered[t]) break;
      std::optional<Minutes> leader;
      if (dep_cursor > 0) {
        const int g2 = departure_order[dep_cursor - 1];
        if (!determined[g2]) break;
        leader = tm.departure[g2];
      }
      tm.departure[t] = earliest_departure(inst.planned_departure[t][station],
                                           tm.arrival[t], inst.min_dwell[station],
                                           leader, h);
      determined[t] = 1;
      TrackState& ts = tracks[tm.track[t]];
      if (ts.latest == t) {
        ts.pending = false;
        ts.free_from = tm.departure[t] + h;
      }
      ++dep_cursor;
    }
  };

  Minutes last_entry = std::numeric_limits<Minutes>::min();
  for (int m : arrival_order) {
    determine_departures();
    Minutes t0 = arrivals_in[m];
    if (station > 0 && last_entry != std::numeric_limits<Minutes>::min())
      t0 = std::max(t0, last_entry + h);

    Minutes best_free = kNever;
    for (const TrackState& ts : tracks)
      if (!ts.pending) best_free = std::min(best_free, ts.free_from);
    if (best_free == kNever) {
      std::ostringstream msg;
      msg << "capacity-infeasible order: train " << m << " cannot enter station "
          << station << "; every platform is held by a train that departs later";
      out.reason = msg.str();
      return out;
    }
    const Minutes entry = std::max(t0, best_free);
    std::vector<int> candidates;
    for (int q = 0; q < static_cast<int>(tracks.size()); ++q)
      if (!tracks[q].pending && tracks[q].free_from <= entry) candidates.push_back(q);
    assert(!candidates.empty());
    int pick = candidates.front();
    if (opts.track_pick == TrackPick::SeededRandom && candidates.size() > 1) {
      std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
      pick = candidates[dist(rng)];
    }
    tm.arrival[m] = entry;
    tm.track[m] = pick;
    tracks[pick].latest = m;
    tracks[pick].pending = true;
    entered[m] = 1;
    last_entry = entry;
  }
  determine_departures();
  assert(dep_cursor == K);

  if (!terminal) {
    tm.next_arrival.assign(K, 0);
    for (int k = 0; k < K; ++k) {
      const Minutes floor_next = inst.planned_arrival[k][station + 1] +
                                 inst.occurred_delay[k][station + 1];
      tm.next_arrival[k] =
          earliest_arrival(floor_next, tm.departure[k], inst.min_run[k][station]);
    }
    std::vector<Minutes> advance_floor(K);
    for (int k = 0; k < K; ++k) {
      Minutes f = tm.departure[k] + inst.min_run[k][station];
      if (inst.occurred_delay[k][station + 1] > 0)
        f = std::max(f, inst.planned_arrival[k][station + 1] +
                            inst.occurred_delay[k][station + 1]);
      advance_floor[k] = f;
    }
    tm.fixes = resolve_arrival_conflicts(tm.next_arrival, departure_order,
                                         advance_floor, tm.arrival, station + 1,
                                         h, opts.objective.lambda,
                                         opts.slack_reference);
  }

  out.feasible = true;
  return out;
}

std::vector<int> ready_order(const Instance& inst) {
  std::vector<int> order(inst.num_trains);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Minutes ra = inst.planned_arrival[a][0] + inst.occurred_delay[a][0];
    const Minutes rb = inst.planned_arrival[b][0] + inst.occurred_delay[b][0];
    if (ra != rb) return ra < rb;
    if (inst.planned_departure[a][0] != inst.planned_departure[b][0])
      return inst.planned_departure[a][0] < inst.planned_departure[b][0];
    return a < b;
  });
  return order;
}

namespace {

ScheduleResult make_infeasible(int station, std::string reason, int K, int I) {
  ScheduleResult res;
  res.feasible = false;
  res.failed_station = station;
  res.reason = std::move(reason);
  res.sol.arrival.assign(K, std::vector<Minutes>(I, 0));
  res.sol.departure.assign(K, std::vector<Minutes>(I, 0));
  res.sol.track.assign(K, std::vector<int>(I, -1));
  res.sol.dep_order.assign(I, {});
  return res;
}

}  // namespace

ScheduleResult run_pipeline(const Instance& inst, const OrderProvider& provider,
                            const SchedulerOptions& opts) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  ScheduleResult res;
  res.sol.arrival.assign(K, std::vector<Minutes>(I, 0));
  res.sol.departure.assign(K, std::vector<Minutes>(I, 0));
  res.sol.track.assign(K, std::vector<int>(I, -1));
  res.sol.dep_order.assign(I, {});
  res.section_inputs.assign(I, std::vector<Minutes>(K, 0));

  std::vector<Minutes> current(K);
  for (int k = 0; k < K; ++k)
    current[k] = inst.planned_arrival[k][0] + inst.occurred_delay[k][0];
  std::vector<int> arr_order = ready_order(inst);
  res.section_inputs[0] = current;

  for (int s = 0; s < I; ++s) {
    const bool terminal = s == I - 1;
    std::vector<int> order;
    if (terminal) {
      order = arr_order;
    } else {
      auto chosen = provider(s, current, arr_order);
      if (!chosen) return make_infeasible(s, "order rule infeasible at station " + std::to_string(s), K, I);
      order = std::move(*chosen);
    }
    auto outcome = time_section(inst, s, current, arr_order, order, opts, terminal);
    if (!outcome.feasible) return make_infeasible(s, outcome.reason, K, I);
    for (int k = 0; k < K; ++k) {
      res.sol.arrival[k][s] = outcome.timing.arrival[k];
      res.sol.departure[k][s] = outcome.timing.departure[k];
      res.sol.track[k][s] = s == 0 ? -1 : outcome.timing.track[k];
    }
    res.sol.dep_order[s] = order;
    for (auto& f : outcome.timing.fixes) res.fixes.push_back(std::move(f));
    if (!terminal) {
      current = outcome.timing.next_arrival;
      res.section_inputs[s + 1] = current;
      arr_order = order;
    }
  }
  return res;
}

std::optional<ScheduleResult> retime_from(const Instance& inst,
                                          const ScheduleResult& base,
                                          int first_station,
                                          const std::vector<std::vector<int>>& orders,
                                          const SchedulerOptions& opts) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  assert(base.feasible);
  assert(first_station >= 0 && first_station < I);

  // suffix_same[s]: every order from station s on matches the base schedule.
  std::vector<char> suffix_same(I + 1, 1);
  for (int s = I - 1; s >= 0; --s)
    suffix_same[s] = suffix_same[s + 1] && (s >= I - 1 || orders[s] == base.sol.dep_order[s]);

  ScheduleResult res = base;
  std::vector<Minutes> current = base.section_inputs[first_station];
  std::vector<int> arr_order = first_station == 0
                                   ? ready_order(inst)
                                   : base.sol.dep_order[first_station - 1];

  for (int s = first_station; s < I; ++s) {
    if (s > first_station && suffix_same[s] && current == base.section_inputs[s]) {
      // Unchanged handoff and unchanged orders: the rest of the base
      // schedule is already the answer.
      return res;
    }
    const bool terminal = s == I - 1;
    const std::vector<int>& order = terminal ? arr_order : orders[s];
    if (!terminal && !order_capacity_feasible(order, arr_order, inst.track_capacity[s]))
      return std::nullopt;
    auto outcome = time_section(inst, s, current, arr_order, order, opts, terminal);
    if (!outcome.feasible) return std::nullopt;
    for (int k = 0; k < K; ++k) {
      res.sol.arrival[k][s] = outcome.timing.arrival[k];
      res.sol.departure[k][s] = outcome.timing.departure[k];
      res.sol.track[k][s] = s == 0 ? -1 : outcome.timing.track[k];
    }
    res.sol.dep_order[s] = order;
    std::erase_if(res.fixes, [s](const ConflictFix& f) { return f.station == s + 1; });
    for (auto& f : outcome.timing.fixes) res.fixes.push_back(std::move(f));
    if (!terminal) {
      current = outcome.timing.next_arrival;
      res.section_inputs[s + 1] = current;
      arr_order = order;
    }
  }
  return res;
}

}  // namespace ttr

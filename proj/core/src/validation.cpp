#include "ttr/validation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace ttr {

namespace {

bool is_permutation_of_trains(const std::vector<int>& order, int K) {
  if (static_cast<int>(order.size()) != K) return false;
  std::vector<char> seen(K, 0);
  for (int t : order) {
    if (t < 0 || t >= K || seen[t]) return false;
    seen[t] = 1;
  }
  return true;
}

}  // namespace

std::vector<Violation> validate(const Solution& sol, const Instance& inst,
                                ValidationProfile profile) {
  std::vector<Violation> out;
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  const Minutes h = inst.headway;

  auto shape_ok = [&](const auto& grid, int rows, int cols) {
    if (static_cast<int>(grid.size()) != rows) return false;
    for (const auto& r : grid)
      if (static_cast<int>(r.size()) != cols) return false;
    return true;
  };
  if (!shape_ok(sol.arrival, K, I) || !shape_ok(sol.departure, K, I) ||
      !shape_ok(sol.track, K, I) || static_cast<int>(sol.dep_order.size()) != I) {
    out.push_back({ViolationKind::Shape, -1, -1, -1, 0, "solution shape does not match instance"});
    return out;
  }

  for (int i = 0; i < I; ++i) {
    if (!is_permutation_of_trains(sol.dep_order[i], K)) {
      out.push_back({ViolationKind::OrderShape, -1, -1, i, 0,
                     "dep_order is not a permutation of trains"});
      return out;
    }
  }

  // Single-train constraints.
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      const Minutes a = sol.arrival[k][i];
      const Minutes d = sol.departure[k][i];
      if (d - a < inst.min_dwell[i])
        out.push_back({ViolationKind::MinDwell, k, -1, i, inst.min_dwell[i] - (d - a), ""});
      if (i + 1 < I) {
        const Minutes run = sol.arrival[k][i + 1] - d;
        if (run < inst.min_run[k][i])
          out.push_back({ViolationKind::MinRun, k, -1, i, inst.min_run[k][i] - run, ""});
      }
      if (d < inst.planned_departure[k][i])
        out.push_back({ViolationKind::PlannedDeparture, k, -1, i,
                       inst.planned_departure[k][i] - d, ""});
      const Minutes occurred = inst.occurred_delay[k][i];
      const Minutes lb = profile == ValidationProfile::StrictMilp
                             ? inst.planned_arrival[k][i] + occurred
                             : (occurred > 0 ? inst.planned_arrival[k][i] + occurred
                                             : std::numeric_limits<Minutes>::min());
      if (a < lb)
        out.push_back({ViolationKind::ArrivalLowerBound, k, -1, i, lb - a, ""});
    }
  }

  // Pairwise headway, tied to the departure order of each station. The
  // arrival check at station i+1 uses station i's order, which also enforces
  // that no train overtakes another inside a section.
  for (int i = 0; i < I; ++i) {
    std::vector<int> pos(K);
    for (int p = 0; p < K; ++p) pos[sol.dep_order[i][p]] = p;
    for (int k1 = 0; k1 < K; ++k1) {
      for (int k2 = 0; k2 < K; ++k2) {
        if (pos[k1] >= pos[k2]) continue;  // k1 departs before k2
        const Minutes dep_gap = sol.departure[k2][i] - sol.departure[k1][i];
        if (dep_gap < h)
          out.push_back({ViolationKind::DepartureHeadway, k1, k2, i, h - dep_gap, ""});
        if (i + 1 < I) {
          const Minutes arr_gap = sol.arrival[k2][i + 1] - sol.arrival[k1][i + 1];
          if (arr_gap < h)
            out.push_back({ViolationKind::ArrivalHeadway, k1, k2, i + 1, h - arr_gap, ""});
        }
      }
    }
  }

  // Track rules at stations 1..I-1 (the origin is untracked).
  for (int i = 1; i < I; ++i) {
    const int P = inst.track_capacity[i];
    for (int k = 0; k < K; ++k) {
      if (sol.track[k][i] < 0 || sol.track[k][i] >= P) {
        out.push_back({ViolationKind::TrackRange, k, -1, i, 0,
                       "track index outside 0..capacity-1"});
      }
    }
    // Same-track reuse: a later arrival on the same platform needs a full
    // headway after the previous occupant's departure.
    for (int k1 = 0; k1 < K; ++k1) {
      for (int k2 = 0; k2 < K; ++k2) {
        if (k1 == k2 || sol.track[k1][i] != sol.track[k2][i]) continue;
        if (sol.track[k1][i] < 0) continue;
        const bool k1_first = sol.arrival[k1][i] < sol.arrival[k2][i] ||
                              (sol.arrival[k1][i] == sol.arrival[k2][i] && k1 < k2);
        if (!k1_first) continue;
        const Minutes gap = sol.arrival[k2][i] - sol.departure[k1][i];
        if (gap < h)
          out.push_back({ViolationKind::TrackReuseGap, k1, k2, i, h - gap, ""});
      }
    }
    // Simultaneous occupancy within capacity: sweep arrival/departure events.
    std::vector<std::pair<Minutes, int>> events;  // (time, +1/-1), departures first on ties
    events.reserve(2 * K);
    for (int k = 0; k < K; ++k) {
      events.emplace_back(sol.arrival[k][i], +1);
      events.emplace_back(sol.departure[k][i], -1);
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    int occupancy = 0, worst = 0;
    Minutes worst_time = 0;
    for (const auto& [t, delta] : events) {
      occupancy += delta;
      if (occupancy > worst) {
        worst = occupancy;
        worst_time = t;
      }
    }
    if (worst > P) {
      std::ostringstream msg;
      msg << worst << " trains dwelling at t=" << worst_time;
      out.push_back({ViolationKind::TrackOccupancy, -1, -1, i, worst - P, msg.str()});
    }
  }

  return out;
}

}  // namespace ttr

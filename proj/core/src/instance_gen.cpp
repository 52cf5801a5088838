#include "ttr/instance_gen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ttr/orders.hpp"
#include "ttr/scheduler.hpp"

namespace ttr {

SeedTimetable bundled_seed(int num_stations, int num_trains) {
  if (num_stations < 1 || num_trains < 1)
    throw std::invalid_argument("bundled_seed needs at least one train and station");
  const int I = num_stations;
  const int K = num_trains;
  SeedTimetable tt;
  tt.headway = 5;
  tt.min_dwell.assign(I, 2);
  tt.track_capacity.assign(I, 3);
  tt.arrival.assign(K, std::vector<Minutes>(I, 0));
  tt.departure.assign(K, std::vector<Minutes>(I, 0));
  tt.min_run.assign(K, std::vector<Minutes>(std::max(I - 1, 0), 0));
  for (int k = 0; k < K; ++k) {
    Minutes t = 6 * k;  // entry spacing above the headway
    for (int i = 0; i < I; ++i) {
      tt.arrival[k][i] = t;
      tt.departure[k][i] = t + 3;  // dwell 2 plus one minute of slack
      if (i + 1 < I) {
        const Minutes run = 10 + (k + i) % 5;
        tt.min_run[k][i] = run;
        t = tt.departure[k][i] + run + 3;  // three minutes of run slack
      }
    }
  }
  return tt;
}

namespace {

Instance instance_from_seed(const SeedTimetable& tt) {
  Instance inst;
  inst.num_trains = static_cast<int>(tt.arrival.size());
  inst.num_stations = static_cast<int>(tt.arrival.front().size());
  inst.planned_arrival = tt.arrival;
  inst.planned_departure = tt.departure;
  inst.min_run = tt.min_run;
  inst.min_dwell = tt.min_dwell;
  inst.headway = tt.headway;
  inst.track_capacity = tt.track_capacity;
  inst.occurred_delay.assign(inst.num_trains,
                             std::vector<Minutes>(inst.num_stations, 0));
  return inst;
}

}  // namespace

Instance generate(const SeedTimetable& seed_tt, const GenConfig& cfg,
                  std::mt19937_64& rng) {
  const int K = static_cast<int>(seed_tt.arrival.size());
  const int I = K > 0 ? static_cast<int>(seed_tt.arrival.front().size()) : 0;
  if (K < 1 || I < 1) throw std::invalid_argument("degenerate seed timetable");

  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Jitter every planned time by up to tau1, keeping each cell's dwell
  // above the minimum.
  std::vector<std::vector<double>> a(K, std::vector<double>(I));
  std::vector<std::vector<double>> d(K, std::vector<double>(I));
  double max_time = 0;
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      a[k][i] = static_cast<double>(seed_tt.arrival[k][i]) +
                unit(rng) * static_cast<double>(cfg.tau1);
      d[k][i] = static_cast<double>(seed_tt.departure[k][i]) +
                unit(rng) * static_cast<double>(cfg.tau1);
      d[k][i] = std::max(d[k][i], a[k][i] + static_cast<double>(seed_tt.min_dwell[i]));
      max_time = std::max(max_time, d[k][i]);
    }
  }
  // Spread the trains over the horizon: train k is shifted by k steps of an
  // arithmetic sequence bounded by the largest time.
  const Minutes step = std::max<Minutes>(1, static_cast<Minutes>(std::ceil(max_time / K)));
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      a[k][i] += static_cast<double>(step * k);
      d[k][i] += static_cast<double>(step * k);
    }
  }

  // Round to whole minutes and repair to a conflict-free plan by running the
  // timetable engine in the raw plan's own order.
  Instance raw = instance_from_seed(seed_tt);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      raw.planned_arrival[k][i] = static_cast<Minutes>(std::llround(a[k][i]));
      raw.planned_departure[k][i] =
          std::max(static_cast<Minutes>(std::llround(d[k][i])),
                   raw.planned_arrival[k][i] + raw.min_dwell[i]);
    }
    for (int i = 0; i + 1 < I; ++i) {
      raw.planned_arrival[k][i + 1] =
          std::max(raw.planned_arrival[k][i + 1],
                   raw.planned_departure[k][i] + raw.min_run[k][i]);
      raw.planned_departure[k][i + 1] =
          std::max(raw.planned_departure[k][i + 1],
                   raw.planned_arrival[k][i + 1] + raw.min_dwell[i + 1]);
    }
  }
  ScheduleResult repaired = solve_fcfs(raw);
  assert(repaired.feasible);

  Instance inst = instance_from_seed(seed_tt);
  inst.planned_arrival = repaired.sol.arrival;
  inst.planned_departure = repaired.sol.departure;

  // Per-train entry delays and per-train/section minimum run times.
  for (int k = 0; k < K; ++k) {
    inst.occurred_delay[k][0] =
        static_cast<Minutes>(std::llround(unit(rng) * static_cast<double>(cfg.tau2)));
    for (int i = 0; i + 1 < I; ++i) {
      const double base = static_cast<double>(seed_tt.min_run[k][i]);
      const double low = cfg.tau3 * base;
      const double run = low + unit(rng) * (base - low);
      inst.min_run[k][i] = std::max<Minutes>(1, static_cast<Minutes>(std::llround(run)));
      inst.min_run[k][i] = std::min(inst.min_run[k][i], seed_tt.min_run[k][i]);
    }
  }
  assert(check_instance(inst).empty());
  return inst;
}

Instance generate(const GenConfig& cfg, std::mt19937_64& rng) {
  return generate(bundled_seed(cfg.num_stations, cfg.num_trains), cfg, rng);
}

std::vector<Instance> generate_batch(const GenConfig& cfg) {
  std::vector<Instance> out;
  out.reserve(cfg.count);
  const SeedTimetable seed_tt = bundled_seed(cfg.num_stations, cfg.num_trains);
  for (int n = 0; n < cfg.count; ++n) {
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n + 1));
    out.push_back(generate(seed_tt, cfg, rng));
  }
  return out;
}

}  // namespace ttr

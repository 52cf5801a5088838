#pragma once

#include <cstdint>
#include <random>

#include "ttr/types.hpp"

namespace ttr {

/// A planned timetable plus the physical minima it was built for; the seed
/// material the generator perturbs.
struct SeedTimetable {
  std::vector<std::vector<Minutes>> arrival;    ///< [K][I]
  std::vector<std::vector<Minutes>> departure;  ///< [K][I]
  std::vector<std::vector<Minutes>> min_run;    ///< [K][I-1]
  std::vector<Minutes> min_dwell;               ///< [I]
  Minutes headway = 5;
  std::vector<int> track_capacity;              ///< [I]
};

struct GenConfig {
  Minutes tau1 = 20;   ///< timetable jitter bound (minutes)
  Minutes tau2 = 60;   ///< entry delay bound: 60 disturbances, 180 disruptions
  double tau3 = 0.3;   ///< minimum-run-time fraction lower bound
  int num_stations = 5;
  int num_trains = 5;
  std::uint64_t seed = 0;
  int count = 1;  ///< batch size for generate_batch
};

/// Deterministic synthetic schedule: evenly spaced trains, uniform section
/// times with recoverable slack, feasible as planned.
SeedTimetable bundled_seed(int num_stations, int num_trains);

/// One augmented instance: jitter the seed by up to tau1 per time, spread
/// trains apart, repair to a conflict-free plan with the timetable engine,
/// then draw per-train entry delays from [0, tau2] and per-section minimum
/// run times from [tau3 * seed_run, seed_run]. All times are rounded to
/// whole minutes; the result always satisfies the instance invariants.
Instance generate(const SeedTimetable& seed_tt, const GenConfig& cfg,
                  std::mt19937_64& rng);

/// Convenience: generate from the bundled seed for cfg's dimensions.
Instance generate(const GenConfig& cfg, std::mt19937_64& rng);

/// cfg.count instances from per-index seeds derived from cfg.seed, so any
/// element can be regenerated in isolation.
std::vector<Instance> generate_batch(const GenConfig& cfg);

}  // namespace ttr

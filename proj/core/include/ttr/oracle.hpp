#pragma once

#include <cstdint>
#include <optional>

#include "ttr/scheduler.hpp"

namespace ttr {

struct OracleConfig {
  std::uint64_t guard = 2'000'000;  ///< maximum section timings before giving up
};

struct OracleResult {
  bool ok = false;             ///< false when the guard tripped
  std::uint64_t replays = 0;   ///< section timings performed
  Penalty objective;
  ScheduleResult schedule;
};

/// Exhaustive search over capacity-feasible departure orders, section by
/// section, each timed with the greedy engine: the exact optimum within the
/// pipeline's solution family. The external mixed-integer model optimizes
/// over a superset and can only be lower or equal.
OracleResult oracle_search(const Instance& inst, const OracleConfig& cfg = {},
                           const SchedulerOptions& opts = {});

}  // namespace ttr

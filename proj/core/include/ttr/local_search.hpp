#pragma once

#include <optional>
#include <random>

#include "ttr/scheduler.hpp"

namespace ttr {

struct SearchConfig {
  int max_iterations = 50;
  std::uint64_t seed = 0;
};

/// A train whose relative order with the train directly ahead of it flipped
/// between station and station-1; swapping them back is the move.
struct MoveCandidate {
  int train = -1;     ///< the train that moved ahead of `adjacent`
  int adjacent = -1;  ///< its predecessor at `station`
  int station = -1;
};

/// Uniformly samples (train, station) pairs until one satisfies the
/// order-changed predicate, giving up after trains x stations draws.
std::optional<MoveCandidate> find_swap_candidate(const ScheduleResult& sched,
                                                 const Instance& inst,
                                                 std::mt19937_64& rng);

/// Swaps the candidate pair back into their upstream order at the
/// candidate's station and re-times from there, reusing the unchanged tail
/// once the handoff state matches. Returns the re-timed schedule and its
/// exact objective, or nullopt when the swapped order breaks the capacity
/// rule at some re-timed station.
std::optional<std::pair<ScheduleResult, Penalty>> try_move(
    const ScheduleResult& sched, const MoveCandidate& move,
    const Instance& inst, const SchedulerOptions& opts);

/// Strict-improvement local search: up to max_iterations sampled moves,
/// accepting only objective decreases; each accepted move is replayed at
/// the following stations while it keeps improving. `trace`, when given,
/// receives the objective after every accepted change (a non-increasing
/// sequence). Deterministic under a fixed seed.
ScheduleResult local_search(const ScheduleResult& start, const Instance& inst,
                            const SearchConfig& cfg,
                            const SchedulerOptions& opts = {},
                            std::vector<Penalty>* trace = nullptr);

}  // namespace ttr

#pragma once

#include <random>

#include "ttr/event_graph.hpp"
#include "ttr/nn/network.hpp"
#include "ttr/scheduler.hpp"
#include "ttr/search_tree.hpp"

namespace ttr {

/// One trajectory entry. Decision steps carry the pre-decision state and
/// the behavior policy's output; commit steps carry the reward produced
/// when a section's times are folded into the graph (rewards are zero
/// everywhere else by construction).
struct TrajectoryStep {
  bool is_commit = false;

  // Decision fields.
  EventGraph state;  ///< snapshot before the decision (empty when not recorded)
  bool has_state = false;
  int station = -1;
  int ahead = -1;
  int overtaken = -1;
  bool swapped = false;
  bool forced = false;
  double prob_swap = 0.0;
  double prob_taken = 1.0;
  float value = 0.f;  ///< critic output at behavior time

  // Commit fields: predicted-objective drop, exact and scaled.
  Penalty reward_parts;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  Penalty initial_prediction;  ///< graph prediction before any commit
  Penalty final_objective;     ///< prediction after the last commit (= exact objective)

  int decision_count() const {
    int n = 0;
    for (const auto& s : steps) n += !s.is_commit;
    return n;
  }
};

struct RolloutResult {
  ScheduleResult schedule;
  Trajectory trajectory;
};

enum class RolloutMode {
  Greedy,  ///< argmax actions, batch-norm from running statistics
  Sample   ///< Bernoulli actions, batch-norm over the live graph
};

/// Builds a full solution section by section: refresh the graph, walk the
/// order tree under the policy, time the section, fold it back into the
/// graph, and collect the reward. Ends with the terminal platform pass at
/// the last station. update_bn_stats folds batch statistics into the
/// running ones after each policy query (training collection only).
/// Throws std::runtime_error if a section turns out capacity-infeasible,
/// which a policy walk rules out by construction.
RolloutResult rollout(const Instance& inst, nn::PolicyParams& params,
                      RolloutMode mode, std::mt19937_64& rng,
                      const SchedulerOptions& opts = {},
                      bool record_states = true, bool update_bn_stats = false);

}  // namespace ttr

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "ttr/types.hpp"

namespace ttr {

/// One decision point: keep the running order as in keep_order, or let the
/// overtaken train move one place forward past the train ahead of it.
struct Bifurcation {
  int overtaken = -1;
  int ahead = -1;
  std::vector<int> keep_order;
  std::vector<int> swap_order;
};

/// Decision structure for one section. The spine lists the bifurcations met
/// when every swap is taken; a walk that declines a swap stops advancing
/// that train and moves on to the next overtaken one, so the reachable
/// orders are exactly "each overtaken train moves forward 0..n places until
/// blocked by a higher-priority train".
struct SearchTree {
  std::vector<int> root;     ///< actual order of the previous section
  std::vector<int> planned;  ///< planned order for this section
  std::vector<int> overtaken;
  std::vector<Bifurcation> spine;
};

/// Trains that sit behind their planned relative position: walk the planned
/// order and flag every train that is not at the front of the shrinking
/// copy of the previous order.
std::vector<int> overtaken_trains(const std::vector<int>& previous_order,
                                  const std::vector<int>& planned_order);

SearchTree build_tree(const std::vector<int>& previous_order,
                      const std::vector<int>& planned_order);

/// All distinct orders reachable by walking the tree.
std::set<std::vector<int>> enumerate_leaves(const SearchTree& tree);

/// Number of distinct keep/swap routes through the tree.
std::uint64_t route_count(const SearchTree& tree);

struct DecisionRecord {
  int station = -1;
  int ahead = -1;      ///< train currently in front
  int overtaken = -1;  ///< train that may move past it
  bool swapped = false;
  bool forced = false;     ///< swap branch pruned by the capacity rule
  double prob_swap = 0.0;  ///< policy output (0 when forced, policy unqueried)
  double prob_taken = 1.0; ///< behavior probability of the chosen branch
};

enum class WalkMode { Greedy, Sample };

struct WalkHooks {
  /// Probability of swapping, queried before each free decision. When
  /// absent every free decision uses 0.5.
  std::function<double(int station, int ahead, int overtaken)> prob_swap;
  /// Called after every decision (free or forced), before the walk moves on.
  std::function<void(const DecisionRecord&)> on_decision;
};

struct WalkResult {
  std::vector<int> order;
  std::vector<DecisionRecord> log;
};

/// Walks the tree at one station. A swap whose resulting order would need
/// some train to pass capacity-1 or more trains (relative to the arrival
/// order) is pruned and the keep branch is forced with probability 1.
/// Greedy swaps when prob > 0.5 (ties keep the current order); Sample draws
/// from the probability.
WalkResult route_walk(const SearchTree& tree, int station,
                      const std::vector<int>& arrival_order, int capacity,
                      WalkMode mode, std::mt19937_64& rng,
                      const WalkHooks& hooks);

}  // namespace ttr

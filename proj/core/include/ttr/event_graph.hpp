#pragma once

#include <algorithm>
#include <iosfwd>
#include <vector>

#include "ttr/scheduler.hpp"
#include "ttr/types.hpp"

namespace ttr {

/// Projected delay one hop downstream: the upstream delay minus the slack
/// the train can recover in between, never below zero.
inline Minutes propagate_delta(Minutes delta_prev, Minutes slack) {
  return std::max<Minutes>(0, delta_prev - slack);
}

/// One arrival event: current delay versus plan (negative once a train is
/// scheduled to arrive early), the planned arrival, and whether the event
/// has been given an explicit time yet.
struct EventNode {
  Minutes delta = 0;
  Minutes planned_arrival = 0;
  bool rescheduled = false;
};

/// Directed graph over the K x I arrival events. Two edge kinds:
///  - same-train edges run backwards in time, from the event at station i+1
///    to the event at station i, so downstream information flows to the
///    decision frontier;
///  - order edges chain adjacent trains of each station's current departure
///    order from the earlier train to the later one.
/// The node set never changes; decisions rewire order edges and section
/// commits update node features.
class EventGraph {
 public:
  struct Edge {
    int from = -1;
    int to = -1;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  EventGraph() = default;

  /// Graph for an instance with nothing decided: every node unscheduled,
  /// deltas from occurred delays propagated along planned slack, order
  /// edges from the planned departure orders.
  static EventGraph build(const Instance& inst);

  /// Graph for a partially built schedule: stations up to and including the
  /// frontier carry scheduled times, the rest are projected.
  static EventGraph build(const Instance& inst, const ScheduleResult& partial,
                          int sections_done);

  int num_trains() const { return trains_; }
  int num_stations() const { return stations_; }
  int node_count() const { return trains_ * stations_; }
  int node_id(int train, int station) const { return train * stations_ + station; }

  const EventNode& node(int train, int station) const {
    return nodes_[node_id(train, station)];
  }
  const std::vector<EventNode>& nodes() const { return nodes_; }
  const std::vector<int>& station_order(int station) const {
    return station_orders_[station];
  }
  Minutes horizon() const { return horizon_; }

  /// Swaps two adjacent trains (ahead directly before overtaken) in a
  /// station's order, rewiring that station's order edges; a no-op when
  /// swap is false. Throws std::invalid_argument if the pair is not
  /// adjacent in that order.
  void apply_order_decision(int station, int ahead, int overtaken, bool swap);

  /// Folds one timed section into the graph: the station's events (and,
  /// unless terminal, the downstream station's) become scheduled with their
  /// deltas taken from the timing, the downstream station inherits the
  /// section's order, and projected deltas beyond the frontier are
  /// recomputed.
  void commit_section(int station, const std::vector<int>& order,
                      const SectionTiming& timing, bool terminal);

  /// Projected objective parts: penalty of every node's delta.
  Penalty predicted_parts() const;
  double predict_objective(const ObjectiveConfig& cfg) const;

  /// Full edge multiset (same-train edges first, then order edges).
  std::vector<Edge> edges() const;

  /// Incoming neighborhoods per node id, the aggregation structure for
  /// message passing.
  std::vector<std::vector<int>> incoming() const;

  /// Edge-list dump, one "from -> to" pair per line, for inspection.
  void dump_edges(std::ostream& os) const;

 private:
  /// Recomputes projected deltas for unscheduled stations > frontier.
  void propagate_from(int frontier);
  Minutes planned_slack(int train, int section) const;

  const Instance* inst_ = nullptr;
  int trains_ = 0;
  int stations_ = 0;
  Minutes horizon_ = 1;
  std::vector<EventNode> nodes_;
  std::vector<std::vector<int>> station_orders_;
};

}  // namespace ttr

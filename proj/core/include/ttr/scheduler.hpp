#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ttr/types.hpp"

namespace ttr {

/// How a free platform track is picked when several are available.
enum class TrackPick {
  LowestIndex,   ///< deterministic default
  SeededRandom,  ///< uniform among the free tracks, driven by rng_seed
};

/// Which arrival the headway-slack test measures against. NextStation
/// compares consecutive arrivals at the downstream station; CurrentStation
/// measures the follower's downstream arrival against the leader's arrival
/// at the upstream station, which detects far fewer conflicts and is kept
/// only as an experimental switch.
enum class SlackReference { NextStation, CurrentStation };

struct SchedulerOptions {
  ObjectiveConfig objective;
  TrackPick track_pick = TrackPick::LowestIndex;
  std::uint64_t rng_seed = 0;
  SlackReference slack_reference = SlackReference::NextStation;
};

/// Earliest feasible departure: not before plan, a full dwell after arrival,
/// and a headway behind the leader's departure when there is one.
Minutes earliest_departure(Minutes planned_departure, Minutes arrival,
                           Minutes min_dwell,
                           std::optional<Minutes> leader_departure,
                           Minutes headway);

/// Earliest downstream arrival: not before the planned arrival (raised by
/// any occurred delay) and a full run time after departure.
Minutes earliest_arrival(Minutes planned_arrival_floor, Minutes departure,
                         Minutes min_run);

/// Margin between consecutive arrivals beyond the headway; negative means
/// the pair conflicts.
Minutes headway_slack(Minutes follower_arrival, Minutes leader_arrival,
                      Minutes headway);

/// Diagnostic record of one resolved arrival conflict at the downstream
/// station: how much slack was missing, which leading trains were pulled
/// earlier (and by how much), and which following trains were pushed later.
struct ConflictFix {
  int station = -1;       ///< downstream station index
  int leader = -1;        ///< train running directly ahead of the follower
  int follower = -1;
  Minutes shortfall = 0;  ///< missing slack (positive)
  Minutes leader_headroom = 0;   ///< leader's room to run earlier
  Minutes leader_limit = 0;      ///< leader's chained advance limit
  std::vector<std::pair<int, Minutes>> advances;  ///< (train, minutes earlier)
  std::vector<int> delayed;                       ///< trains pushed later
};

/// Timing of one station and, unless terminal, the section that leaves it.
struct SectionTiming {
  std::vector<Minutes> arrival;       ///< final arrivals at the station
  std::vector<Minutes> departure;     ///< departures from the station
  std::vector<int> track;             ///< 0-based platform per train
  std::vector<Minutes> next_arrival;  ///< tentative arrivals downstream (empty when terminal)
  std::vector<ConflictFix> fixes;
};

struct SectionOutcome {
  bool feasible = false;
  std::string reason;
  SectionTiming timing;
};

/// Times one station in three passes. Platform entries happen in arrival
/// order: each train enters once a platform is free (a headway after the
/// previous occupant's departure) and, beyond the origin, a headway after
/// the previous arrival; a train that cannot be placed because every
/// platform is held by trains that must depart after it makes the order
/// capacity-infeasible, which is reported rather than repaired. Departures
/// then follow the given departure order, and tentative downstream arrivals
/// are repaired by pulling leading trains earlier within their run slack
/// before pushing followers later.
SectionOutcome time_section(const Instance& inst, int station,
                            const std::vector<Minutes>& arrivals_in,
                            const std::vector<int>& arrival_order,
                            const std::vector<int>& departure_order,
                            const SchedulerOptions& opts, bool terminal);

/// Resolves arrival conflicts at a downstream station in departure order.
/// `tentative` holds arrivals at the downstream station indexed by train and
/// is modified in place; `advance_floor` is the earliest each arrival may be
/// pulled to. Exposed for targeted tests; time_section calls it internally.
std::vector<ConflictFix> resolve_arrival_conflicts(
    std::vector<Minutes>& tentative, const std::vector<int>& departure_order,
    const std::vector<Minutes>& advance_floor,
    const std::vector<Minutes>& upstream_arrival, int downstream_station,
    Minutes headway, double lambda, SlackReference ref);

/// Full pipeline output. section_inputs[i] are the tentative arrivals at
/// station i before platform entry (ready times at the origin); they are
/// what a re-timing of station i onward has to start from.
struct ScheduleResult {
  Solution sol;
  std::vector<std::vector<Minutes>> section_inputs;  ///< [I][K]
  std::vector<ConflictFix> fixes;
  bool feasible = true;
  int failed_station = -1;
  std::string reason;
};

/// Supplies the departure order for one section; nullopt marks the order
/// rule itself infeasible (the pipeline stops and reports).
using OrderProvider = std::function<std::optional<std::vector<int>>(
    int section, const std::vector<Minutes>& arrivals,
    const std::vector<int>& arrival_order)>;

/// Entry order at the origin: by ready time (planned arrival plus occurred
/// delay), ties by planned departure, then train index.
std::vector<int> ready_order(const Instance& inst);

/// Runs every section in sequence and finishes with a terminal pass at the
/// last station (entries plus departures in arrival order).
ScheduleResult run_pipeline(const Instance& inst, const OrderProvider& provider,
                            const SchedulerOptions& opts);

/// Re-times stations `first_station`.. with fixed departure orders, starting
/// from base.section_inputs[first_station]. Orders for untouched stations
/// come from `orders`; the terminal station always uses its arrival order.
/// Returns nullopt when some re-timed section becomes capacity-infeasible.
std::optional<ScheduleResult> retime_from(const Instance& inst,
                                          const ScheduleResult& base,
                                          int first_station,
                                          const std::vector<std::vector<int>>& orders,
                                          const SchedulerOptions& opts);

}  // namespace ttr

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ttr {

/// All timetable arithmetic is done in whole minutes so that feasibility
/// checks (headway, dwell, run times) are exact.
using Minutes = std::int64_t;

/// A rescheduling problem: the planned timetable, the physical minima, and
/// the delays that have already occurred.
///
/// Indexing is 0-based throughout: train k in [0, num_trains), station i in
/// [0, num_stations). Section i connects station i to station i+1, so
/// per-section data has num_stations-1 columns.
struct Instance {
  int num_stations = 0;  ///< I
  int num_trains = 0;    ///< K

  std::vector<std::vector<Minutes>> planned_arrival;    ///< [K][I]
  std::vector<std::vector<Minutes>> planned_departure;  ///< [K][I]
  std::vector<std::vector<Minutes>> min_run;            ///< [K][I-1]
  std::vector<Minutes> min_dwell;                       ///< [I]
  Minutes headway = 5;
  std::vector<int> track_capacity;                      ///< [I]
  std::vector<std::vector<Minutes>> occurred_delay;     ///< [K][I], >= 0

  /// Largest planned time; used as the big-M base and feature normalizer.
  Minutes horizon() const;
};

/// Checks shape and value invariants (planned timetable feasible for each
/// train in isolation, positive run times, capacities >= 1, ...). Returns a
/// list of human-readable problems, empty when the instance is well formed.
std::vector<std::string> check_instance(const Instance& inst);

/// Weight of early arrivals relative to late arrivals in the objective.
struct ObjectiveConfig {
  double lambda = 0.3;
};

/// Objective value split into its exact integer components:
/// J = late + lambda * early.
struct Penalty {
  Minutes late = 0;   ///< sum of positive arrival deviations
  Minutes early = 0;  ///< sum of negative arrival deviations (as positives)

  double value(const ObjectiveConfig& cfg) const {
    return static_cast<double>(late) + cfg.lambda * static_cast<double>(early);
  }
  Penalty& operator+=(const Penalty& o) {
    late += o.late;
    early += o.early;
    return *this;
  }
  friend Penalty operator+(Penalty a, const Penalty& b) { return a += b; }
  friend Penalty operator-(Penalty a, const Penalty& b) {
    a.late -= b.late;
    a.early -= b.early;
    return a;
  }
  friend bool operator==(const Penalty&, const Penalty&) = default;
};

/// Exact comparison of two penalties under a decimal lambda. Returns
/// negative/zero/positive like a three-way compare of a.value - b.value.
/// Lambda is treated as a rational with denominator 1e6, which reproduces
/// any lambda given with up to six decimals without floating point error.
int compare_penalty(const Penalty& a, const Penalty& b, const ObjectiveConfig& cfg);

/// A rescheduled timetable. dep_order[i] lists train indices in departure
/// order at station i. track[k][i] is a 0-based platform index; the origin
/// station is untracked and carries -1 there.
struct Solution {
  std::vector<std::vector<Minutes>> arrival;    ///< [K][I]
  std::vector<std::vector<Minutes>> departure;  ///< [K][I]
  std::vector<std::vector<int>> dep_order;      ///< [I][K]
  std::vector<std::vector<int>> track;          ///< [K][I]
};

/// Big-M configuration for the mixed-integer export.
struct LpExportConfig {
  Minutes big_m = 0;  ///< 0 means "derive as 10 x horizon"

  Minutes resolve(const Instance& inst) const;
};

enum class ValidationProfile {
  /// Mirrors the mixed-integer model exactly: arrivals may never precede
  /// plan (arrival - planned >= occurred delay everywhere).
  StrictMilp,
  /// Allows early arrivals; occurred delays still act as lower bounds where
  /// they are positive.
  Operational,
};

enum class ViolationKind {
  Shape,
  MinRun,
  MinDwell,
  PlannedDeparture,
  ArrivalLowerBound,
  DepartureHeadway,
  ArrivalHeadway,
  TrackRange,
  TrackReuseGap,
  TrackOccupancy,
  OrderShape,
};

struct Violation {
  ViolationKind kind;
  int train = -1;
  int other_train = -1;
  int station = -1;
  Minutes amount = 0;  ///< size of the breach, when meaningful
  std::string detail;
};

std::string to_string(ViolationKind kind);
std::string to_string(const Violation& v);

}  // namespace ttr

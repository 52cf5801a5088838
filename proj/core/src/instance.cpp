#include "ttr/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ttr {

Minutes Instance::horizon() const {
  Minutes h = 0;
  for (const auto& row : planned_arrival)
    for (Minutes t : row) h = std::max(h, t);
  for (const auto& row : planned_departure)
    for (Minutes t : row) h = std::max(h, t);
  return h;
}

Minutes LpExportConfig::resolve(const Instance& inst) const {
  if (big_m > 0) return big_m;
  return 10 * std::max<Minutes>(inst.horizon(), 1);
}

int compare_penalty(const Penalty& a, const Penalty& b, const ObjectiveConfig& cfg) {
  const long long num = std::llround(cfg.lambda * 1e6);
  // v = late * 1e6 + num * early, compared exactly in integers.
  const long long va = a.late * 1000000LL + num * a.early;
  const long long vb = b.late * 1000000LL + num * b.early;
  return va < vb ? -1 : (va > vb ? 1 : 0);
}

namespace {

template <typename T>
bool grid_shape_ok(const std::vector<std::vector<T>>& g, int rows, int cols) {
  if (static_cast<int>(g.size()) != rows) return false;
  return std::all_of(g.begin(), g.end(), [cols](const auto& r) {
    return static_cast<int>(r.size()) == cols;
  });
}

}  // namespace

std::vector<std::string> check_instance(const Instance& inst) {
  std::vector<std::string> problems;
  auto fail = [&problems](const std::string& msg) { problems.push_back(msg); };

  const int K = inst.num_trains;
  const int I = inst.num_stations;
  if (K < 1 || I < 1) {
    fail("num_trains and num_stations must be >= 1");
    return problems;
  }
  if (!grid_shape_ok(inst.planned_arrival, K, I)) fail("planned_arrival must be K x I");
  if (!grid_shape_ok(inst.planned_departure, K, I)) fail("planned_departure must be K x I");
  if (I > 1 && !grid_shape_ok(inst.min_run, K, I - 1)) fail("min_run must be K x (I-1)");
  if (I == 1 && !inst.min_run.empty() && !grid_shape_ok(inst.min_run, K, 0))
    fail("min_run must be K x 0 for a single station");
  if (static_cast<int>(inst.min_dwell.size()) != I) fail("min_dwell must have I entries");
  if (static_cast<int>(inst.track_capacity.size()) != I) fail("track_capacity must have I entries");
  if (!grid_shape_ok(inst.occurred_delay, K, I)) fail("occurred_delay must be K x I");
  if (!problems.empty()) return problems;

  if (inst.headway <= 0) fail("headway must be positive");
  for (int i = 0; i < I; ++i) {
    if (inst.track_capacity[i] < 1) fail("track_capacity must be >= 1 at station " + std::to_string(i));
    if (inst.min_dwell[i] < 0) fail("min_dwell must be >= 0 at station " + std::to_string(i));
  }
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      const Minutes a = inst.planned_arrival[k][i];
      const Minutes d = inst.planned_departure[k][i];
      std::ostringstream at;
      at << " (train " << k << ", station " << i << ")";
      if (a < 0 || d < 0) fail("planned times must be non-negative" + at.str());
      if (a > d) fail("planned arrival after planned departure" + at.str());
      if (d - a < inst.min_dwell[i]) fail("planned dwell below minimum" + at.str());
      if (inst.occurred_delay[k][i] < 0) fail("occurred_delay must be >= 0" + at.str());
      if (i + 1 < I) {
        if (inst.min_run[k][i] <= 0) fail("min_run must be positive" + at.str());
        if (d + inst.min_run[k][i] > inst.planned_arrival[k][i + 1])
          fail("planned section time below minimum run time" + at.str());
      }
    }
  }
  return problems;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Shape: return "shape";
    case ViolationKind::MinRun: return "min_run";
    case ViolationKind::MinDwell: return "min_dwell";
    case ViolationKind::PlannedDeparture: return "planned_departure";
    case ViolationKind::ArrivalLowerBound: return "arrival_lower_bound";
    case ViolationKind::DepartureHeadway: return "departure_headway";
    case ViolationKind::ArrivalHeadway: return "arrival_headway";
    case ViolationKind::TrackRange: return "track_range";
    case ViolationKind::TrackReuseGap: return "track_reuse_gap";
    case ViolationKind::TrackOccupancy: return "track_occupancy";
    case ViolationKind::OrderShape: return "order_shape";
  }
  return "unknown";
}

std::string to_string(const Violation& v) {
  std::ostringstream os;
  os << "violation: kind=" << to_string(v.kind);
  if (v.train >= 0) os << " train=" << v.train;
  if (v.other_train >= 0) os << " other=" << v.other_train;
  if (v.station >= 0) os << " station=" << v.station;
  if (v.amount != 0) os << " amount=" << v.amount;
  if (!v.detail.empty()) os << " detail=\"" << v.detail << "\"";
  return os.str();
}

}  // namespace ttr

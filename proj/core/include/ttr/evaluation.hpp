#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ttr/types.hpp"

namespace ttr {

struct EvalRow {
  std::string instance;
  std::string method;
  double objective = 0;
  double wall_time_s = 0;
  bool feasible = true;
};

/// Per-instance results plus aggregates recomputed from the rows. The gap
/// of a method against a baseline is (J_method - J_baseline) / J_method,
/// computed on the mean objectives; infeasible rows are excluded from the
/// mean and only counted.
struct EvalReport {
  std::vector<EvalRow> rows;

  int count(const std::string& method, bool feasible_only = true) const;
  int infeasible_count(const std::string& method) const;
  std::optional<double> mean_objective(const std::string& method) const;
  std::optional<double> mean_wall_time(const std::string& method) const;
  std::optional<double> gap_percent(const std::string& method,
                                    const std::string& baseline) const;
  std::vector<std::string> methods() const;

  /// Fixed header "instance,method,objective,wall_time_s,feasible".
  void write_csv(std::ostream& os) const;
  static EvalReport read_csv(std::istream& is);
  void save_csv(const std::string& path) const;
  static EvalReport load_csv(const std::string& path);
};

}  // namespace ttr

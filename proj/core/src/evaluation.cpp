#include "ttr/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ttr {

int EvalReport::count(const std::string& method, bool feasible_only) const {
  int n = 0;
  for (const auto& r : rows)
    if (r.method == method && (!feasible_only || r.feasible)) ++n;
  return n;
}

int EvalReport::infeasible_count(const std::string& method) const {
  int n = 0;
  for (const auto& r : rows)
    if (r.method == method && !r.feasible) ++n;
  return n;
}

std::optional<double> EvalReport::mean_objective(const std::string& method) const {
  double total = 0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.method != method || !r.feasible) continue;
    total += r.objective;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return total / n;
}

std::optional<double> EvalReport::mean_wall_time(const std::string& method) const {
  double total = 0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.method != method || !r.feasible) continue;
    total += r.wall_time_s;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return total / n;
}

std::optional<double> EvalReport::gap_percent(const std::string& method,
                                              const std::string& baseline) const {
  const auto jm = mean_objective(method);
  const auto jb = mean_objective(baseline);
  if (!jm || !jb || *jm == 0) return std::nullopt;
  return (*jm - *jb) / *jm * 100.0;
}

std::vector<std::string> EvalReport::methods() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), r.method) == out.end())
      out.push_back(r.method);
  return out;
}

void EvalReport::write_csv(std::ostream& os) const {
  os << "instance,method,objective,wall_time_s,feasible\n";
  for (const auto& r : rows) {
    os << r.instance << ',' << r.method << ',' << r.objective << ','
       << r.wall_time_s << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

EvalReport EvalReport::read_csv(std::istream& is) {
  EvalReport rep;
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("empty report file");
  if (line != "instance,method,objective,wall_time_s,feasible")
    throw std::runtime_error("unexpected report header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    EvalRow r;
    std::string field;
    if (!std::getline(row, r.instance, ',')) continue;
    if (!std::getline(row, r.method, ',')) continue;
    if (!std::getline(row, field, ',')) continue;
    r.objective = std::stod(field);
    if (!std::getline(row, field, ',')) continue;
    r.wall_time_s = std::stod(field);
    if (!std::getline(row, field, ',')) continue;
    r.feasible = field != "0";
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

void EvalReport::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(os);
}

EvalReport EvalReport::load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_csv(is);
}

}  // namespace ttr

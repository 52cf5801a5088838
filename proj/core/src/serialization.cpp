#include "ttr/serialization.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ttr {

using nlohmann::json;

namespace {

json grid_to_json(const std::vector<std::vector<Minutes>>& g) { return json(g); }

std::vector<std::vector<Minutes>> grid_from_json(const json& j, const char* key) {
  if (!j.contains(key)) throw std::runtime_error(std::string("missing field: ") + key);
  return j.at(key).get<std::vector<std::vector<Minutes>>>();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

}  // namespace

void write_instance(const Instance& inst, std::ostream& os) {
  json j;
  j["num_stations"] = inst.num_stations;
  j["num_trains"] = inst.num_trains;
  j["planned_arrival"] = grid_to_json(inst.planned_arrival);
  j["planned_departure"] = grid_to_json(inst.planned_departure);
  j["min_run"] = grid_to_json(inst.min_run);
  j["min_dwell"] = inst.min_dwell;
  j["headway"] = inst.headway;
  j["track_capacity"] = inst.track_capacity;
  j["occurred_delay"] = grid_to_json(inst.occurred_delay);
  os << j.dump(1) << '\n';
}

Instance read_instance(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed instance file: ") + e.what());
  }
  Instance inst;
  try {
    inst.num_stations = j.at("num_stations").get<int>();
    inst.num_trains = j.at("num_trains").get<int>();
    inst.planned_arrival = grid_from_json(j, "planned_arrival");
    inst.planned_departure = grid_from_json(j, "planned_departure");
    inst.min_run = grid_from_json(j, "min_run");
    inst.min_dwell = j.at("min_dwell").get<std::vector<Minutes>>();
    inst.headway = j.at("headway").get<Minutes>();
    inst.track_capacity = j.at("track_capacity").get<std::vector<int>>();
    inst.occurred_delay = grid_from_json(j, "occurred_delay");
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed instance file: ") + e.what());
  }
  auto problems = check_instance(inst);
  if (!problems.empty())
    throw std::runtime_error("invalid instance: " + problems.front());
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  auto os = open_out(path);
  write_instance(inst, os);
}

Instance load_instance(const std::string& path) {
  auto is = open_in(path);
  return read_instance(is);
}

void write_solution(const Solution& sol, std::ostream& os) {
  json j;
  j["arrival"] = grid_to_json(sol.arrival);
  j["departure"] = grid_to_json(sol.departure);
  j["dep_order"] = sol.dep_order;
  j["track"] = sol.track;
  os << j.dump(1) << '\n';
}

Solution read_solution(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed solution file: ") + e.what());
  }
  Solution sol;
  try {
    sol.arrival = grid_from_json(j, "arrival");
    sol.departure = grid_from_json(j, "departure");
    sol.dep_order = j.at("dep_order").get<std::vector<std::vector<int>>>();
    sol.track = j.at("track").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed solution file: ") + e.what());
  }
  return sol;
}

void save_solution(const Solution& sol, const std::string& path) {
  auto os = open_out(path);
  write_solution(sol, os);
}

Solution load_solution(const std::string& path) {
  auto is = open_in(path);
  return read_solution(is);
}

}  // namespace ttr

#pragma once

#include <iosfwd>
#include <string>

#include "ttr/types.hpp"

namespace ttr {

/// Instances and solutions are stored as UTF-8 JSON documents whose keys
/// match the field names of Instance and Solution. Loading validates shapes
/// and throws std::runtime_error with a descriptive message on bad input.

void write_instance(const Instance& inst, std::ostream& os);
void save_instance(const Instance& inst, const std::string& path);
Instance read_instance(std::istream& is);
Instance load_instance(const std::string& path);

void write_solution(const Solution& sol, std::ostream& os);
void save_solution(const Solution& sol, const std::string& path);
Solution read_solution(std::istream& is);
Solution load_solution(const std::string& path);

}  // namespace ttr

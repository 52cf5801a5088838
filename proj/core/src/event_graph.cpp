#include "ttr/event_graph.hpp"

#include <cassert>
#include <ostream>
#include <stdexcept>

#include "ttr/objective.hpp"
#include "ttr/orders.hpp"

namespace ttr {

Minutes EventGraph::planned_slack(int train, int section) const {
  const auto& a = inst_->planned_arrival[train];
  return a[section + 1] - a[section] - inst_->min_dwell[section] -
         inst_->min_run[train][section];
}

void EventGraph::propagate_from(int frontier) {
  for (int i = frontier + 1; i < stations_; ++i) {
    for (int k = 0; k < trains_; ++k) {
      EventNode& n = nodes_[node_id(k, i)];
      assert(!n.rescheduled);
      const Minutes prev = nodes_[node_id(k, i - 1)].delta;
      n.delta = std::max(propagate_delta(prev, planned_slack(k, i - 1)),
                         inst_->occurred_delay[k][i]);
    }
  }
}

EventGraph EventGraph::build(const Instance& inst) {
  EventGraph g;
  g.inst_ = &inst;
  g.trains_ = inst.num_trains;
  g.stations_ = inst.num_stations;
  g.horizon_ = std::max<Minutes>(inst.horizon(), 1);
  g.nodes_.resize(g.trains_ * g.stations_);
  for (int k = 0; k < g.trains_; ++k) {
    for (int i = 0; i < g.stations_; ++i) {
      EventNode& n = g.nodes_[g.node_id(k, i)];
      n.planned_arrival = inst.planned_arrival[k][i];
      n.rescheduled = false;
      n.delta = 0;
    }
    g.nodes_[g.node_id(k, 0)].delta = inst.occurred_delay[k][0];
  }
  g.station_orders_.resize(g.stations_);
  // The origin's current order is the one trains actually present themselves
  // in (planned arrival plus occurred delay); with no delays it coincides
  // with the planned order. Undecided stations carry the planned order.
  g.station_orders_[0] = ready_order(inst);
  for (int i = 1; i < g.stations_; ++i) g.station_orders_[i] = planned_order(inst, i);
  g.propagate_from(0);
  return g;
}

EventGraph EventGraph::build(const Instance& inst, const ScheduleResult& partial,
                             int sections_done) {
  EventGraph g = build(inst);
  if (sections_done <= 0) return g;
  const int c = sections_done;
  assert(c <= g.stations_ - 1);
  for (int i = 0; i < c; ++i) {
    g.station_orders_[i] = partial.sol.dep_order[i];
    for (int k = 0; k < g.trains_; ++k) {
      EventNode& n = g.nodes_[g.node_id(k, i)];
      n.rescheduled = true;
      n.delta = partial.sol.arrival[k][i] - n.planned_arrival;
    }
  }
  g.station_orders_[c] = partial.sol.dep_order[c - 1];
  for (int k = 0; k < g.trains_; ++k) {
    EventNode& n = g.nodes_[g.node_id(k, c)];
    n.rescheduled = true;
    n.delta = partial.section_inputs[c][k] - n.planned_arrival;
  }
  g.propagate_from(c);
  return g;
}

void EventGraph::apply_order_decision(int station, int ahead, int overtaken,
                                      bool swap) {
  if (!swap) return;
  auto& order = station_orders_[station];
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    if (order[p] == ahead && order[p + 1] == overtaken) {
      std::swap(order[p], order[p + 1]);
      return;
    }
  }
  throw std::invalid_argument("apply_order_decision: trains are not adjacent in the station order");
}

void EventGraph::commit_section(int station, const std::vector<int>& order,
                                const SectionTiming& timing, bool terminal) {
  assert(station_orders_[station] == order);
  for (int k = 0; k < trains_; ++k) {
    EventNode& n = nodes_[node_id(k, station)];
    n.rescheduled = true;
    n.delta = timing.arrival[k] - n.planned_arrival;
  }
  if (terminal) return;
  station_orders_[station + 1] = order;
  for (int k = 0; k < trains_; ++k) {
    EventNode& n = nodes_[node_id(k, station + 1)];
    n.rescheduled = true;
    n.delta = timing.next_arrival[k] - n.planned_arrival;
  }
  propagate_from(station + 1);
}

Penalty EventGraph::predicted_parts() const {
  Penalty total;
  for (const EventNode& n : nodes_)
    total += delay_penalty_parts(n.planned_arrival + n.delta, n.planned_arrival);
  return total;
}

double EventGraph::predict_objective(const ObjectiveConfig& cfg) const {
  return predicted_parts().value(cfg);
}

std::vector<EventGraph::Edge> EventGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(trains_ * (stations_ - 1) + stations_ * (trains_ - 1));
  for (int k = 0; k < trains_; ++k)
    for (int i = 0; i + 1 < stations_; ++i)
      out.push_back({node_id(k, i + 1), node_id(k, i)});
  for (int i = 0; i < stations_; ++i) {
    const auto& order = station_orders_[i];
    for (std::size_t p = 0; p + 1 < order.size(); ++p)
      out.push_back({node_id(order[p], i), node_id(order[p + 1], i)});
  }
  return out;
}

std::vector<std::vector<int>> EventGraph::incoming() const {
  std::vector<std::vector<int>> in(node_count());
  for (const Edge& e : edges()) in[e.to].push_back(e.from);
  return in;
}

void EventGraph::dump_edges(std::ostream& os) const {
  for (const Edge& e : edges()) {
    os << 't' << e.from / stations_ << 's' << e.from % stations_ << " -> "
       << 't' << e.to / stations_ << 's' << e.to % stations_ << '\n';
  }
}

}  // namespace ttr

#include "ttr/search_tree.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ttr/orders.hpp"

namespace ttr {

namespace {

std::vector<int> positions_of(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (int p = 0; p < static_cast<int>(order.size()); ++p) pos[order[p]] = p;
  return pos;
}

void check_permutations(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("orders cover different train sets");
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb || std::adjacent_find(sa.begin(), sa.end()) != sa.end())
    throw std::invalid_argument("orders are not permutations of the same trains");
}

}  // namespace

std::vector<int> overtaken_trains(const std::vector<int>& previous_order,
                                  const std::vector<int>& planned_order) {
  check_permutations(previous_order, planned_order);
  std::vector<int> remaining = previous_order;
  std::vector<int> out;
  for (int k : planned_order) {
    auto it = std::find(remaining.begin(), remaining.end(), k);
    assert(it != remaining.end());
    if (it != remaining.begin()) out.push_back(k);
    remaining.erase(it);
  }
  return out;
}

SearchTree build_tree(const std::vector<int>& previous_order,
                      const std::vector<int>& planned_order) {
  SearchTree tree;
  tree.root = previous_order;
  tree.planned = planned_order;
  tree.overtaken = overtaken_trains(previous_order, planned_order);

  const auto plan_pos = positions_of(planned_order);
  std::vector<int> father = previous_order;
  for (int k : previous_order) {
    if (std::find(tree.overtaken.begin(), tree.overtaken.end(), k) ==
        tree.overtaken.end())
      continue;
    while (true) {
      const auto pos = static_cast<int>(
          std::find(father.begin(), father.end(), k) - father.begin());
      if (pos == 0) break;
      const int ahead = father[pos - 1];
      if (plan_pos[ahead] < plan_pos[k]) break;
      Bifurcation b;
      b.overtaken = k;
      b.ahead = ahead;
      b.keep_order = father;
      b.swap_order = father;
      std::swap(b.swap_order[pos - 1], b.swap_order[pos]);
      father = b.swap_order;
      tree.spine.push_back(std::move(b));
    }
  }
  return tree;
}

namespace {

void enumerate_rec(const SearchTree& tree, const std::vector<int>& plan_pos,
                   std::vector<int> order, std::size_t root_idx,
                   std::set<std::vector<int>>* leaves, std::uint64_t* routes) {
  if (root_idx == tree.root.size()) {
    if (leaves) leaves->insert(order);
    if (routes) ++*routes;
    return;
  }
  const int k = tree.root[root_idx];
  if (std::find(tree.overtaken.begin(), tree.overtaken.end(), k) ==
      tree.overtaken.end()) {
    enumerate_rec(tree, plan_pos, std::move(order), root_idx + 1, leaves, routes);
    return;
  }
  std::vector<int> cur = std::move(order);
  while (true) {
    enumerate_rec(tree, plan_pos, cur, root_idx + 1, leaves, routes);
    const auto pos = static_cast<int>(
        std::find(cur.begin(), cur.end(), k) - cur.begin());
    if (pos == 0) break;
    const int ahead = cur[pos - 1];
    if (plan_pos[ahead] < plan_pos[k]) break;
    std::swap(cur[pos - 1], cur[pos]);
  }
}

}  // namespace

std::set<std::vector<int>> enumerate_leaves(const SearchTree& tree) {
  std::set<std::vector<int>> leaves;
  enumerate_rec(tree, positions_of(tree.planned), tree.root, 0, &leaves, nullptr);
  return leaves;
}

std::uint64_t route_count(const SearchTree& tree) {
  std::uint64_t routes = 0;
  enumerate_rec(tree, positions_of(tree.planned), tree.root, 0, nullptr, &routes);
  return routes;
}

WalkResult route_walk(const SearchTree& tree, int station,
                      const std::vector<int>& arrival_order, int capacity,
                      WalkMode mode, std::mt19937_64& rng,
                      const WalkHooks& hooks) {
  WalkResult res;
  res.order = tree.root;
  const auto plan_pos = positions_of(tree.planned);

  for (int k : tree.root) {
    if (std::find(tree.overtaken.begin(), tree.overtaken.end(), k) ==
        tree.overtaken.end())
      continue;
    while (true) {
      const auto pos = static_cast<int>(
          std::find(res.order.begin(), res.order.end(), k) - res.order.begin());
      if (pos == 0) break;
      const int ahead = res.order[pos - 1];
      if (plan_pos[ahead] < plan_pos[k]) break;

      std::vector<int> candidate = res.order;
      std::swap(candidate[pos - 1], candidate[pos]);

      DecisionRecord rec;
      rec.station = station;
      rec.ahead = ahead;
      rec.overtaken = k;

      if (!order_capacity_feasible(candidate, arrival_order, capacity)) {
        rec.forced = true;
        rec.swapped = false;
        rec.prob_taken = 1.0;
        if (hooks.on_decision) hooks.on_decision(rec);
        res.log.push_back(rec);
        break;  // the keep branch is forced; this train stops advancing
      }

      const double p = hooks.prob_swap ? hooks.prob_swap(station, ahead, k) : 0.5;
      rec.prob_swap = p;
      if (mode == WalkMode::Greedy) {
        rec.swapped = p > 0.5;
      } else {
        std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
        rec.swapped = coin(rng);
      }
      rec.prob_taken = rec.swapped ? p : 1.0 - p;
      if (hooks.on_decision) hooks.on_decision(rec);
      res.log.push_back(rec);

      if (!rec.swapped) break;
      res.order = std::move(candidate);
    }
  }
  return res;
}

}  // namespace ttr

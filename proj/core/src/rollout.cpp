#include "ttr/rollout.hpp"

#include <stdexcept>

#include "ttr/orders.hpp"

namespace ttr {

RolloutResult rollout(const Instance& inst, nn::PolicyParams& params,
                      RolloutMode mode, std::mt19937_64& rng,
                      const SchedulerOptions& opts, bool record_states,
                      bool update_bn_stats) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  const nn::Mode net_mode =
      mode == RolloutMode::Sample ? nn::Mode::Train : nn::Mode::Eval;
  const WalkMode walk_mode =
      mode == RolloutMode::Sample ? WalkMode::Sample : WalkMode::Greedy;

  RolloutResult res;
  ScheduleResult& sched = res.schedule;
  sched.sol.arrival.assign(K, std::vector<Minutes>(I, 0));
  sched.sol.departure.assign(K, std::vector<Minutes>(I, 0));
  sched.sol.track.assign(K, std::vector<int>(I, -1));
  sched.sol.dep_order.assign(I, {});
  sched.section_inputs.assign(I, std::vector<Minutes>(K, 0));

  EventGraph graph = EventGraph::build(inst);
  Trajectory& traj = res.trajectory;
  traj.initial_prediction = graph.predicted_parts();
  Penalty jhat_prev = traj.initial_prediction;

  std::vector<Minutes> current(K);
  for (int k = 0; k < K; ++k)
    current[k] = inst.planned_arrival[k][0] + inst.occurred_delay[k][0];
  std::vector<int> arr_order = ready_order(inst);
  sched.section_inputs[0] = current;

  for (int s = 0; s < I; ++s) {
    const bool terminal = s == I - 1;
    std::vector<int> order;
    if (terminal) {
      order = arr_order;
    } else {
      SearchTree tree = build_tree(arr_order, planned_order(inst, s));

      // Pending decision step filled across the two hooks.
      TrajectoryStep pending;
      WalkHooks hooks;
      hooks.prob_swap = [&](int station, int ahead, int overtaken) {
        pending = TrajectoryStep{};
        if (record_states) {
          pending.state = graph;
          pending.has_state = true;
        }
        pending.station = station;
        pending.ahead = ahead;
        pending.overtaken = overtaken;
        nn::GinCache cache;
        nn::Mat h = nn::gin_forward(graph, params, net_mode, &cache);
        if (update_bn_stats && net_mode == nn::Mode::Train)
          nn::update_running_stats(params, cache);
        pending.value = nn::critic_forward(h, params);
        const float p = nn::actor_forward(h, graph.node_id(ahead, station),
                                          graph.node_id(overtaken, station),
                                          params);
        return static_cast<double>(p);
      };
      hooks.on_decision = [&](const DecisionRecord& rec) {
        if (rec.forced) {
          pending = TrajectoryStep{};
          if (record_states) {
            pending.state = graph;
            pending.has_state = true;
          }
          pending.station = rec.station;
          pending.ahead = rec.ahead;
          pending.overtaken = rec.overtaken;
          nn::GinCache cache;
          nn::Mat h = nn::gin_forward(graph, params, net_mode, &cache);
          pending.value = nn::critic_forward(h, params);
        }
        pending.swapped = rec.swapped;
        pending.forced = rec.forced;
        pending.prob_swap = rec.prob_swap;
        pending.prob_taken = rec.prob_taken;
        traj.steps.push_back(std::move(pending));
        pending = TrajectoryStep{};
        if (rec.swapped)
          graph.apply_order_decision(rec.station, rec.ahead, rec.overtaken, true);
      };

      WalkResult walk = route_walk(tree, s, arr_order, inst.track_capacity[s],
                                   walk_mode, rng, hooks);
      order = std::move(walk.order);
    }

    auto outcome = time_section(inst, s, current, arr_order, order, opts, terminal);
    if (!outcome.feasible)
      throw std::runtime_error("rollout hit an infeasible section: " + outcome.reason);
    for (int k = 0; k < K; ++k) {
      sched.sol.arrival[k][s] = outcome.timing.arrival[k];
      sched.sol.departure[k][s] = outcome.timing.departure[k];
      sched.sol.track[k][s] = s == 0 ? -1 : outcome.timing.track[k];
    }
    sched.sol.dep_order[s] = order;
    for (auto& f : outcome.timing.fixes) sched.fixes.push_back(std::move(f));

    graph.commit_section(s, order, outcome.timing, terminal);
    const Penalty jhat_new = graph.predicted_parts();
    TrajectoryStep commit;
    commit.is_commit = true;
    commit.reward_parts = jhat_prev - jhat_new;
    commit.reward = commit.reward_parts.value(opts.objective) /
                    static_cast<double>(K * I);
    traj.steps.push_back(std::move(commit));
    jhat_prev = jhat_new;

    if (!terminal) {
      current = outcome.timing.next_arrival;
      sched.section_inputs[s + 1] = current;
      arr_order = order;
    }
  }
  traj.final_objective = jhat_prev;
  return res;
}

}  // namespace ttr

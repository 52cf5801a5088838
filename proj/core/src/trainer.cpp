#include "ttr/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ttr {

void TrainConfig::check() const {
  if (gamma <= 0 || gamma > 1) throw std::invalid_argument("gamma must be in (0, 1]");
  if (clip <= 0) throw std::invalid_argument("clip must be positive");
  if (std::abs(p_small + p_large - 1.0) > 1e-12 || p_small <= p_large)
    throw std::invalid_argument("sampling weights must sum to 1 with p_small > p_large");
  if (stage != 1 && stage != 2) throw std::invalid_argument("stage must be 1 or 2");
  if (episodes < 0 || epochs_per_episode < 1)
    throw std::invalid_argument("bad episode/epoch budget");
}

double reward_value(double jhat_prev, double jhat_new, int trains, int stations) {
  return (jhat_prev - jhat_new) / static_cast<double>(trains * stations);
}

LossBreakdown ppo_losses(const Trajectory& traj, nn::PolicyParams& params,
                         const TrainConfig& cfg,
                         const nn::PolicyParams* teacher, nn::GradTape* tape) {
  LossBreakdown out;
  const int T = static_cast<int>(traj.steps.size());
  if (T == 0) return out;
  if (cfg.stage == 2 && !teacher)
    throw std::invalid_argument("stage 2 losses need the frozen teacher");

  // Discounted returns over the full step sequence (commit steps carry the
  // rewards, decision steps read their tails).
  std::vector<double> returns(T);
  double acc = 0;
  for (int t = T - 1; t >= 0; --t) {
    acc = traj.steps[t].reward + cfg.gamma * acc;
    returns[t] = acc;
  }

  int decisions = 0;
  for (const auto& s : traj.steps) decisions += !s.is_commit;
  out.decision_steps = decisions;
  if (decisions == 0) return out;

  const double floor = cfg.prob_floor;
  for (int t = 0; t < T; ++t) {
    const TrajectoryStep& step = traj.steps[t];
    if (step.is_commit) continue;
    if (!step.has_state)
      throw std::invalid_argument("trajectory was collected without states");

    nn::GinCache gin_cache;
    nn::Mat h = nn::gin_forward(step.state, params, nn::Mode::Train, &gin_cache);
    nn::CriticCache critic_cache;
    const double v = nn::critic_forward(h, params, &critic_cache);
    const double ret = returns[t];

    double dL_dv = 0;
    out.value += (ret - v) * (ret - v);
    dL_dv = -2.0 * (ret - v) / static_cast<double>(decisions);

    double dL_dp = 0;
    nn::ActorCache actor_cache;
    double p = 0;
    if (!step.forced) {
      const int node_ahead = step.state.node_id(step.ahead, step.station);
      const int node_over = step.state.node_id(step.overtaken, step.station);
      p = nn::actor_forward(h, node_ahead, node_over, params, &actor_cache);
      const double pc = std::clamp(p, floor, 1.0 - floor);

      const double advantage = ret - v;  // baseline held fixed in the policy term
      const double p_taken = step.swapped ? pc : 1.0 - pc;
      const double ratio = p_taken / step.prob_taken;
      const double unclipped = ratio * advantage;
      const double clipped = std::clamp(ratio, 1.0 - cfg.clip, 1.0 + cfg.clip) * advantage;
      out.policy += -std::min(unclipped, clipped);
      double dmin_dratio = 0;
      if (unclipped <= clipped) {
        dmin_dratio = advantage;
      } else if (ratio > 1.0 - cfg.clip && ratio < 1.0 + cfg.clip) {
        dmin_dratio = advantage;
      }
      const double dratio_dp = (step.swapped ? 1.0 : -1.0) / step.prob_taken;
      double dL1_dp = -dmin_dratio * dratio_dp;

      const double entropy = -(pc * std::log(pc) + (1.0 - pc) * std::log(1.0 - pc));
      out.entropy += -entropy;
      double dL3_dp = 0;
      if (p > floor && p < 1.0 - floor) dL3_dp = std::log(pc / (1.0 - pc));

      double dL4_dp = 0;
      if (cfg.stage == 2) {
        nn::Mat ht = nn::gin_forward(step.state, *teacher, nn::Mode::Eval);
        const double pt = std::clamp(
            static_cast<double>(nn::actor_forward(ht, node_ahead, node_over, *teacher)),
            floor, 1.0 - floor);
        out.distill += -(pt * std::log(pc) + (1.0 - pt) * std::log(1.0 - pc));
        if (p > floor && p < 1.0 - floor)
          dL4_dp = -pt / pc + (1.0 - pt) / (1.0 - pc);
      }

      dL_dp = cfg.w1 * dL1_dp + cfg.w3() * dL3_dp + cfg.w4 * dL4_dp;
    }

    if (tape) {
      nn::Mat dh = nn::Mat::Zero(h.rows(), h.cols());
      if (!step.forced && dL_dp != 0.0)
        nn::actor_backward(actor_cache, params, static_cast<float>(dL_dp), *tape, dh);
      nn::critic_backward(critic_cache, params,
                          static_cast<float>(cfg.w2 * dL_dv), *tape, dh);
      nn::gin_backward(step.state, gin_cache, params, dh, *tape);
    }
  }
  out.value /= static_cast<double>(decisions);
  out.total = cfg.w1 * out.policy + cfg.w2 * out.value + cfg.w3() * out.entropy;
  if (cfg.stage == 2) out.total += cfg.w4 * out.distill;
  return out;
}

InstanceSource curriculum_source(const TrainConfig& cfg) {
  const SeedTimetable seed_tt = bundled_seed(cfg.num_stations, cfg.num_trains);
  return [cfg, seed_tt](std::mt19937_64& rng) {
    GenConfig gen;
    gen.tau1 = cfg.tau1;
    gen.tau3 = cfg.tau3;
    gen.num_stations = cfg.num_stations;
    gen.num_trains = cfg.num_trains;
    if (cfg.stage == 1) {
      gen.tau2 = cfg.tau2_small;
    } else {
      std::bernoulli_distribution small(cfg.p_small);
      gen.tau2 = small(rng) ? cfg.tau2_small : cfg.tau2_large;
    }
    return generate(seed_tt, gen, rng);
  };
}

namespace {

double evaluate_greedy(const std::vector<Instance>& set, nn::PolicyParams& params,
                       const ObjectiveConfig& obj) {
  double total = 0;
  std::mt19937_64 rng(0);  // greedy mode draws nothing
  for (const Instance& inst : set) {
    SchedulerOptions opts;
    opts.objective = obj;
    auto res = rollout(inst, params, RolloutMode::Greedy, rng, opts,
                       /*record_states=*/false);
    total += res.trajectory.final_objective.value(obj);
  }
  return set.empty() ? 0.0 : total / static_cast<double>(set.size());
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const nn::PolicyParams* teacher,
                  const InstanceSource& source, std::ostream* curve_csv) {
  cfg.check();
  if (cfg.stage == 2 && !teacher)
    throw std::invalid_argument("stage 2 training needs a first-stage checkpoint");

  InstanceSource sample = source ? source : curriculum_source(cfg);

  TrainResult result;
  result.params = cfg.stage == 2 ? *teacher
                                 : nn::PolicyParams::init(cfg.net, cfg.seed);
  nn::AdamState adam = nn::AdamState::init(result.params);
  nn::AdamConfig adam_cfg;
  adam_cfg.lr = cfg.lr;
  nn::GradTape tape = nn::GradTape::init(result.params);

  // Frozen validation set from a seed stream disjoint from the episodes.
  std::mt19937_64 eval_rng(cfg.seed ^ 0x5eedf00d5eedf00dULL);
  std::vector<Instance> eval_set;
  eval_set.reserve(cfg.eval_set_size);
  for (int n = 0; n < cfg.eval_set_size; ++n) eval_set.push_back(sample(eval_rng));

  if (curve_csv)
    *curve_csv << "episode,mean_objective,loss_total,loss_policy,loss_value,"
                  "loss_entropy,loss_distill\n";

  std::mt19937_64 rng(cfg.seed);
  SchedulerOptions opts;
  LossBreakdown last;
  for (int episode = 1; episode <= cfg.episodes; ++episode) {
    const Instance inst = sample(rng);
    auto ro = rollout(inst, result.params, RolloutMode::Sample, rng, opts,
                      /*record_states=*/true, /*update_bn_stats=*/true);
    if (ro.trajectory.decision_count() > 0) {
      for (int epoch = 0; epoch < cfg.epochs_per_episode; ++epoch) {
        tape.zero();
        last = ppo_losses(ro.trajectory, result.params, cfg, teacher, &tape);
        nn::adam_step(result.params, tape, adam, adam_cfg);
      }
    }
    if (episode % cfg.eval_interval == 0 || episode == cfg.episodes) {
      CurvePoint pt;
      pt.episode = episode;
      pt.mean_eval_objective = evaluate_greedy(eval_set, result.params, opts.objective);
      pt.last_losses = last;
      result.curve.push_back(pt);
      if (curve_csv) {
        *curve_csv << pt.episode << ',' << pt.mean_eval_objective << ','
                   << last.total << ',' << last.policy << ',' << last.value << ','
                   << last.entropy << ',' << last.distill << '\n';
        curve_csv->flush();
      }
    }
  }
  return result;
}

}  // namespace ttr

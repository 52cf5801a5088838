#pragma once

#include <functional>
#include <iosfwd>
#include <optional>

#include "ttr/instance_gen.hpp"
#include "ttr/nn/adam.hpp"
#include "ttr/nn/checkpoint.hpp"
#include "ttr/rollout.hpp"

namespace ttr {

struct TrainConfig {
  double gamma = 0.9;
  double clip = 0.2;
  double w1 = 2.0;         ///< policy loss weight
  double w2 = 2.0;         ///< value loss weight
  double w3_stage1 = 0.1;  ///< entropy weight, first stage
  double w3_stage2 = 0.03; ///< entropy weight, second stage
  double w4 = 1.0;         ///< distillation weight (second stage)
  float lr = 1e-4f;
  int episodes = 5000;
  int epochs_per_episode = 10;
  double p_small = 0.8;  ///< probability of a small-delay episode in stage 2
  double p_large = 0.2;
  int stage = 1;
  std::uint64_t seed = 0;

  // Episode instance generation.
  int num_stations = 5;
  int num_trains = 5;
  Minutes tau1 = 20;
  double tau3 = 0.3;
  Minutes tau2_small = 60;
  Minutes tau2_large = 180;

  // Evaluation cadence for the learning curve.
  int eval_interval = 50;
  int eval_set_size = 20;

  double prob_floor = 1e-7;  ///< clamp inside logs and cross-entropies
  nn::NetConfig net;

  double w3() const { return stage == 1 ? w3_stage1 : w3_stage2; }
  /// Throws std::invalid_argument when a field is out of range.
  void check() const;
};

struct LossBreakdown {
  double policy = 0;    ///< clipped-ratio surrogate
  double value = 0;     ///< mean squared return error
  double entropy = 0;   ///< negated action entropy
  double distill = 0;   ///< teacher cross-entropy (stage 2)
  double total = 0;
  int decision_steps = 0;
};

/// Scaled predicted-objective drop credited when node features update.
double reward_value(double jhat_prev, double jhat_new, int trains, int stations);

/// Recomputes the policy on a collected trajectory and accumulates the
/// gradient of w1*L1 + w2*L2 + w3*L3 (+ w4*L4 with a teacher) into `tape`
/// when given. Behavior probabilities recorded in the trajectory stand in
/// for the old policy; capacity-forced decisions contribute to the value
/// loss only.
LossBreakdown ppo_losses(const Trajectory& traj, nn::PolicyParams& params,
                         const TrainConfig& cfg,
                         const nn::PolicyParams* teacher = nullptr,
                         nn::GradTape* tape = nullptr);

/// One point of the learning curve.
struct CurvePoint {
  int episode = 0;
  double mean_eval_objective = 0;
  LossBreakdown last_losses;
};

struct TrainResult {
  nn::PolicyParams params;
  std::vector<CurvePoint> curve;
};

using InstanceSource = std::function<Instance(std::mt19937_64&)>;

/// Episode sampler implementing the two-stage curriculum: stage 1 draws
/// small-delay instances, stage 2 mixes small and large delays with the
/// configured unbalanced weights.
InstanceSource curriculum_source(const TrainConfig& cfg);

/// Trains for cfg.episodes episodes: collect one sampled trajectory, then
/// run epochs_per_episode optimizer updates on it; stage 2 requires the
/// frozen first-stage teacher and adds the distillation term on the
/// student's visited states. Every eval_interval episodes the greedy policy
/// is scored on a frozen validation set drawn from the same distribution,
/// producing the learning curve (optionally streamed to curve_csv with the
/// header "episode,mean_objective,loss_total,loss_policy,loss_value,
/// loss_entropy,loss_distill").
TrainResult train(const TrainConfig& cfg,
                  const nn::PolicyParams* teacher = nullptr,
                  const InstanceSource& source = {},
                  std::ostream* curve_csv = nullptr);

}  // namespace ttr

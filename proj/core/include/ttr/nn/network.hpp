#pragma once

#include "ttr/event_graph.hpp"
#include "ttr/nn/params.hpp"

namespace ttr::nn {

enum class Mode {
  Train,  ///< batch norm over the nodes of this graph
  Eval    ///< batch norm from running statistics
};

/// Raw node features, one row per node: delta and planned arrival scaled by
/// the instance horizon, plus the rescheduled flag when input_dim is 3.
Mat node_features(const EventGraph& g, const NetConfig& cfg);

/// Saved intermediates of one message-passing forward, enough to replay the
/// chain rule exactly.
struct GinCache {
  Mat x;          ///< N x in, raw features
  Mat agg;        ///< N x in, (1+eps) x_v + sum of incoming x_u
  Mat z1, a1;     ///< N x H
  Mat z2;         ///< N x H, batch-norm input
  Vec mean, var;  ///< statistics used (batch or running)
  Mat xhat;       ///< N x H, normalized
  Mat h;          ///< N x H, output embeddings
  bool train_mode = false;
};

/// One round of neighborhood aggregation along incoming edges followed by
/// the two-layer MLP, batch norm, and ReLU. Pure; running statistics are
/// only touched by update_running_stats.
Mat gin_forward(const EventGraph& g, const PolicyParams& p, Mode mode,
                GinCache* cache = nullptr);

/// Folds the batch statistics of a finished train-mode forward into the
/// running statistics.
void update_running_stats(PolicyParams& p, const GinCache& cache);

/// Propagates dL/dh back through the layer, accumulating parameter
/// gradients. Input features are data, so nothing flows further back.
void gin_backward(const EventGraph& g, const GinCache& cache,
                  const PolicyParams& p, const Mat& dh, GradTape& tape);

struct ActorCache {
  int node_ahead = -1;
  int node_overtaken = -1;
  Vec input;  ///< [h_ahead; h_overtaken]
  Vec z1, a1;
  float z2 = 0.f;
  float p = 0.f;
};

/// Probability that the overtaken train moves ahead: sigmoid over an MLP of
/// the two node embeddings, the train currently in front first.
float actor_forward(const Mat& h, int node_ahead, int node_overtaken,
                    const PolicyParams& p, ActorCache* cache = nullptr);

/// Accumulates parameter gradients and adds this head's contribution to the
/// embedding gradient dh.
void actor_backward(const ActorCache& cache, const PolicyParams& p,
                    float dloss_dprob, GradTape& tape, Mat& dh);

struct CriticCache {
  Vec hg;  ///< mean embedding
  Vec z1, a1;
  float v = 0.f;
  Eigen::Index n = 0;
};

/// State value: MLP over the mean of all node embeddings.
/// Throws std::invalid_argument on an empty graph.
float critic_forward(const Mat& h, const PolicyParams& p,
                     CriticCache* cache = nullptr);

void critic_backward(const CriticCache& cache, const PolicyParams& p,
                     float dloss_dvalue, GradTape& tape, Mat& dh);

}  // namespace ttr::nn

#include "ttr/nn/network.hpp"

#include <cmath>
#include <stdexcept>

namespace ttr::nn {

Mat node_features(const EventGraph& g, const NetConfig& cfg) {
  const auto& nodes = g.nodes();
  const float scale = 1.0f / static_cast<float>(g.horizon());
  Mat x(static_cast<Eigen::Index>(nodes.size()), cfg.input_dim);
  for (Eigen::Index n = 0; n < x.rows(); ++n) {
    x(n, 0) = static_cast<float>(nodes[n].delta) * scale;
    x(n, 1) = static_cast<float>(nodes[n].planned_arrival) * scale;
    if (cfg.input_dim > 2) x(n, 2) = nodes[n].rescheduled ? 1.f : 0.f;
  }
  return x;
}

Mat gin_forward(const EventGraph& g, const PolicyParams& p, Mode mode,
                GinCache* cache) {
  GinCache local;
  GinCache& c = cache ? *cache : local;
  c.train_mode = mode == Mode::Train;

  c.x = node_features(g, p.config);
  const auto in_edges = g.incoming();
  c.agg = (1.f + p.epsilon) * c.x;
  for (Eigen::Index v = 0; v < c.x.rows(); ++v)
    for (int u : in_edges[v]) c.agg.row(v) += c.x.row(u);

  c.z1 = (c.agg * p.gin1.w.transpose()).rowwise() + p.gin1.b.transpose();
  c.a1 = c.z1.cwiseMax(0.f);
  c.z2 = (c.a1 * p.gin2.w.transpose()).rowwise() + p.gin2.b.transpose();

  const Eigen::Index n = c.z2.rows();
  if (c.train_mode) {
    c.mean = c.z2.colwise().mean();
    Mat centered = c.z2.rowwise() - c.mean.transpose();
    c.var = centered.array().square().colwise().mean();
    c.xhat = centered.array().rowwise() /
             (c.var.transpose().array() + p.config.bn_epsilon).sqrt();
  } else {
    c.mean = p.bn_mean;
    c.var = p.bn_var;
    c.xhat = (c.z2.rowwise() - c.mean.transpose()).array().rowwise() /
             (c.var.transpose().array() + p.config.bn_epsilon).sqrt();
  }
  Mat bn_out = (c.xhat.array().rowwise() * p.bn_gamma.transpose().array())
                   .rowwise() +
               p.bn_beta.transpose().array();
  c.h = bn_out.cwiseMax(0.f);
  (void)n;
  return c.h;
}

void update_running_stats(PolicyParams& p, const GinCache& cache) {
  if (!cache.train_mode) return;
  const float m = p.config.bn_momentum;
  p.bn_mean = m * p.bn_mean + (1.f - m) * cache.mean;
  p.bn_var = m * p.bn_var + (1.f - m) * cache.var;
}

void gin_backward(const EventGraph& g, const GinCache& c,
                  const PolicyParams& p, const Mat& dh, GradTape& tape) {
  const Eigen::Index N = c.h.rows();
  const float eps = p.config.bn_epsilon;

  // ReLU after batch norm.
  Mat dbn = (c.h.array() > 0.f).cast<float>() * dh.array();

  // Batch norm affine.
  tape.grads[kBnGamma] += (dbn.array() * c.xhat.array()).colwise().sum().transpose();
  tape.grads[kBnBeta] += dbn.colwise().sum().transpose().array();
  Mat dxhat = dbn.array().rowwise() * p.bn_gamma.transpose().array();

  Mat dz2;
  Eigen::ArrayXf inv_std = (c.var.array() + eps).sqrt().inverse();
  if (c.train_mode) {
    // Statistics were computed over these nodes, so their gradients couple
    // every row of the batch.
    Mat centered = c.z2.rowwise() - c.mean.transpose();
    Eigen::ArrayXf dvar =
        ((dxhat.array() * centered.array()).colwise().sum().transpose()) *
        (-0.5f) * inv_std.cube();
    Eigen::ArrayXf dmean =
        (dxhat.array().rowwise() * (-inv_std).transpose()).colwise().sum().transpose() +
        dvar * (-2.f / static_cast<float>(N)) *
            centered.array().colwise().sum().transpose();
    dz2 = dxhat.array().rowwise() * inv_std.transpose();
    dz2.array() += centered.array().rowwise() *
                   (dvar * (2.f / static_cast<float>(N))).transpose();
    dz2.array().rowwise() += (dmean / static_cast<float>(N)).transpose();
  } else {
    dz2 = dxhat.array().rowwise() * inv_std.transpose();
  }

  tape.matrix(kGin2W, p.gin2.w.rows(), p.gin2.w.cols()) += dz2.transpose() * c.a1;
  tape.grads[kGin2B] += dz2.colwise().sum().transpose().array();
  Mat da1 = dz2 * p.gin2.w;
  Mat dz1 = (c.z1.array() > 0.f).cast<float>() * da1.array();
  tape.matrix(kGin1W, p.gin1.w.rows(), p.gin1.w.cols()) += dz1.transpose() * c.agg;
  tape.grads[kGin1B] += dz1.colwise().sum().transpose().array();

  Mat dagg = dz1 * p.gin1.w;
  tape.grads[kGinEps](0) += (dagg.array() * c.x.array()).sum();
  (void)g;
}

float actor_forward(const Mat& h, int node_ahead, int node_overtaken,
                    const PolicyParams& p, ActorCache* cache) {
  ActorCache local;
  ActorCache& c = cache ? *cache : local;
  c.node_ahead = node_ahead;
  c.node_overtaken = node_overtaken;
  const Eigen::Index H = h.cols();
  c.input.resize(2 * H);
  c.input.head(H) = h.row(node_ahead).transpose();
  c.input.tail(H) = h.row(node_overtaken).transpose();
  c.z1 = p.actor1.w * c.input + p.actor1.b;
  c.a1 = c.z1.cwiseMax(0.f);
  c.z2 = (p.actor2.w * c.a1)(0) + p.actor2.b(0);
  c.p = 1.f / (1.f + std::exp(-c.z2));
  return c.p;
}

void actor_backward(const ActorCache& c, const PolicyParams& p,
                    float dloss_dprob, GradTape& tape, Mat& dh) {
  const float dz2 = dloss_dprob * c.p * (1.f - c.p);
  tape.matrix(kActor2W, 1, p.actor2.w.cols()) += dz2 * c.a1.transpose();
  tape.grads[kActor2B](0) += dz2;
  Vec da1 = dz2 * p.actor2.w.transpose();
  Vec dz1 = (c.z1.array() > 0.f).cast<float>() * da1.array();
  tape.matrix(kActor1W, p.actor1.w.rows(), p.actor1.w.cols()) +=
      dz1 * c.input.transpose();
  tape.grads[kActor1B] += dz1.array();
  Vec din = p.actor1.w.transpose() * dz1;
  const Eigen::Index H = dh.cols();
  dh.row(c.node_ahead) += din.head(H).transpose();
  dh.row(c.node_overtaken) += din.tail(H).transpose();
}

float critic_forward(const Mat& h, const PolicyParams& p, CriticCache* cache) {
  if (h.rows() == 0) throw std::invalid_argument("critic on an empty graph");
  CriticCache local;
  CriticCache& c = cache ? *cache : local;
  c.n = h.rows();
  c.hg = h.colwise().mean().transpose();
  c.z1 = p.critic1.w * c.hg + p.critic1.b;
  c.a1 = c.z1.cwiseMax(0.f);
  c.v = (p.critic2.w * c.a1)(0) + p.critic2.b(0);
  return c.v;
}

void critic_backward(const CriticCache& c, const PolicyParams& p,
                     float dloss_dvalue, GradTape& tape, Mat& dh) {
  tape.matrix(kCritic2W, 1, p.critic2.w.cols()) += dloss_dvalue * c.a1.transpose();
  tape.grads[kCritic2B](0) += dloss_dvalue;
  Vec da1 = dloss_dvalue * p.critic2.w.transpose();
  Vec dz1 = (c.z1.array() > 0.f).cast<float>() * da1.array();
  tape.matrix(kCritic1W, p.critic1.w.rows(), p.critic1.w.cols()) +=
      dz1 * c.hg.transpose();
  tape.grads[kCritic1B] += dz1.array();
  Vec dhg = p.critic1.w.transpose() * dz1;
  dh.array().rowwise() += (dhg / static_cast<float>(c.n)).transpose().array();
}

}  // namespace ttr::nn

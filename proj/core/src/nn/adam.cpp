#include "ttr/nn/adam.hpp"

#include <cassert>
#include <cmath>

namespace ttr::nn {

AdamState AdamState::init(const PolicyParams& p) {
  AdamState s;
  for (const TensorView& t : tensor_views(p)) {
    if (!t.trainable) continue;
    s.m.emplace_back(Eigen::ArrayXf::Zero(t.size));
    s.v.emplace_back(Eigen::ArrayXf::Zero(t.size));
  }
  return s;
}

void adam_step(PolicyParams& params, const GradTape& grads, AdamState& state,
               const AdamConfig& cfg) {
  ++state.step;
  const float bc1 = 1.f - std::pow(cfg.beta1, static_cast<float>(state.step));
  const float bc2 = 1.f - std::pow(cfg.beta2, static_cast<float>(state.step));
  int gi = 0;
  for (TensorView& t : tensor_views(params)) {
    if (!t.trainable) continue;
    auto g = grads.grads[gi];
    auto& m = state.m[gi];
    auto& v = state.v[gi];
    m = cfg.beta1 * m + (1.f - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.f - cfg.beta2) * g.square();
    Eigen::Map<Eigen::ArrayXf> theta(t.data, t.size);
    theta -= cfg.lr * (m / bc1) / ((v / bc2).sqrt() + cfg.eps);
    ++gi;
  }
  assert(gi == kTrainableCount);
}

}  // namespace ttr::nn

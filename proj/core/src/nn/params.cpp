#include "ttr/nn/params.hpp"

#include <cassert>
#include <cmath>
#include <random>

namespace ttr::nn {

namespace {

Mat glorot(Eigen::Index out, Eigen::Index in, std::mt19937_64& rng) {
  const float bound = std::sqrt(6.0f / static_cast<float>(in + out));
  std::uniform_real_distribution<float> dist(-bound, bound);
  Mat m(out, in);
  for (Eigen::Index c = 0; c < in; ++c)
    for (Eigen::Index r = 0; r < out; ++r) m(r, c) = dist(rng);
  return m;
}

Linear make_linear(Eigen::Index out, Eigen::Index in, std::mt19937_64& rng) {
  return {glorot(out, in, rng), Vec::Zero(out)};
}

}  // namespace

PolicyParams PolicyParams::init(const NetConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PolicyParams p;
  p.config = cfg;
  const int H = cfg.hidden;
  p.gin1 = make_linear(H, cfg.input_dim, rng);
  p.gin2 = make_linear(H, H, rng);
  p.epsilon = 0.f;
  p.bn_gamma = Vec::Ones(H);
  p.bn_beta = Vec::Zero(H);
  p.bn_mean = Vec::Zero(H);
  p.bn_var = Vec::Ones(H);
  p.actor1 = make_linear(H, 2 * H, rng);
  p.actor2 = make_linear(1, H, rng);
  p.critic1 = make_linear(H, H, rng);
  p.critic2 = make_linear(1, H, rng);
  return p;
}

std::vector<TensorView> tensor_views(PolicyParams& p) {
  auto mat = [](const char* name, Mat& m, bool trainable = true) {
    return TensorView{name, m.data(), m.size(), m.rows(), m.cols(), trainable};
  };
  auto vec = [](const char* name, Vec& v, bool trainable = true) {
    return TensorView{name, v.data(), v.size(), v.size(), 1, trainable};
  };
  return {
      mat("gin1.w", p.gin1.w), vec("gin1.b", p.gin1.b),
      mat("gin2.w", p.gin2.w), vec("gin2.b", p.gin2.b),
      TensorView{"gin.eps", &p.epsilon, 1, 1, 1, true},
      vec("bn.gamma", p.bn_gamma), vec("bn.beta", p.bn_beta),
      mat("actor1.w", p.actor1.w), vec("actor1.b", p.actor1.b),
      mat("actor2.w", p.actor2.w), vec("actor2.b", p.actor2.b),
      mat("critic1.w", p.critic1.w), vec("critic1.b", p.critic1.b),
      mat("critic2.w", p.critic2.w), vec("critic2.b", p.critic2.b),
      vec("bn.mean", p.bn_mean, false), vec("bn.var", p.bn_var, false),
  };
}

std::vector<TensorView> tensor_views(const PolicyParams& p) {
  return tensor_views(const_cast<PolicyParams&>(p));
}

GradTape GradTape::init(const PolicyParams& p) {
  GradTape tape;
  for (const TensorView& t : tensor_views(p)) {
    if (!t.trainable) continue;
    tape.grads.emplace_back(Eigen::ArrayXf::Zero(t.size));
  }
  assert(static_cast<int>(tape.grads.size()) == kTrainableCount);
  return tape;
}

void GradTape::zero() {
  for (auto& g : grads) g.setZero();
}

GradTape& GradTape::operator+=(const GradTape& o) {
  assert(grads.size() == o.grads.size());
  for (std::size_t i = 0; i < grads.size(); ++i) grads[i] += o.grads[i];
  return *this;
}

}  // namespace ttr::nn

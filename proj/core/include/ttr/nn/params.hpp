#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ttr::nn {

using Mat = Eigen::MatrixXf;
using Vec = Eigen::VectorXf;

struct NetConfig {
  int input_dim = 2;  ///< [delta, planned arrival] normalized; 3 adds the rescheduled flag
  int hidden = 128;
  float bn_momentum = 0.9f;
  float bn_epsilon = 1e-5f;

  friend bool operator==(const NetConfig&, const NetConfig&) = default;
};

/// y = w * x + b with w laid out [out x in].
struct Linear {
  Mat w;
  Vec b;
};

/// Every learnable value of the decision model: one message-passing layer
/// (two-layer MLP, learnable self-weight, batch norm) plus the actor and
/// critic heads. 32-bit floats throughout.
struct PolicyParams {
  NetConfig config;

  Linear gin1, gin2;   ///< input_dim -> hidden -> hidden
  float epsilon = 0.f; ///< self-weight in the neighborhood aggregation
  Vec bn_gamma, bn_beta;
  Vec bn_mean, bn_var; ///< running statistics (saved, not optimized)

  Linear actor1, actor2;    ///< 2*hidden -> hidden -> 1
  Linear critic1, critic2;  ///< hidden -> hidden -> 1

  static PolicyParams init(const NetConfig& cfg, std::uint64_t seed);
};

/// Named view over one parameter tensor; running statistics are exposed but
/// flagged untrainable.
struct TensorView {
  std::string name;
  float* data = nullptr;
  Eigen::Index size = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  bool trainable = true;
};

std::vector<TensorView> tensor_views(PolicyParams& p);
std::vector<TensorView> tensor_views(const PolicyParams& p);  // const-cast free view for reads

/// Gradient accumulators aligned with the trainable subsequence of
/// tensor_views().
struct GradTape {
  std::vector<Eigen::ArrayXf> grads;

  static GradTape init(const PolicyParams& p);
  void zero();
  GradTape& operator+=(const GradTape& o);

  Eigen::Map<Mat> matrix(int idx, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<Mat>(grads[idx].data(), rows, cols);
  }
};

/// Indices into GradTape::grads, fixed by the tensor_views ordering.
enum TensorIndex : int {
  kGin1W = 0, kGin1B, kGin2W, kGin2B, kGinEps,
  kBnGamma, kBnBeta,
  kActor1W, kActor1B, kActor2W, kActor2B,
  kCritic1W, kCritic1B, kCritic2W, kCritic2B,
  kTrainableCount
};

}  // namespace ttr::nn

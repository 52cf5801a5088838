#pragma once

#include "ttr/nn/params.hpp"

namespace ttr::nn {

struct AdamConfig {
  float lr = 1e-4f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float eps = 1e-8f;
};

/// First/second-moment buffers, one per trainable tensor.
struct AdamState {
  std::vector<Eigen::ArrayXf> m, v;
  long step = 0;

  static AdamState init(const PolicyParams& p);
};

/// One bias-corrected update of every trainable tensor.
void adam_step(PolicyParams& params, const GradTape& grads, AdamState& state,
               const AdamConfig& cfg);

}  // namespace ttr::nn

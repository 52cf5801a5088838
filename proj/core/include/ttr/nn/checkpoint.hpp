#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "ttr/nn/params.hpp"

namespace ttr::nn {

struct CheckpointMeta {
  int stage = 1;           ///< training stage that produced the model
  std::uint64_t seed = 0;  ///< master seed of that run
};

/// Binary checkpoint: a JSON manifest (format version, stage, seed, network
/// shape, tensor table, actor input convention) followed by every tensor as
/// a flat little-endian float32 array and a checksum of those bytes.
/// Round-trips are bit-exact; a truncated or corrupted file fails to load.
void save_checkpoint(const PolicyParams& params, const CheckpointMeta& meta,
                     const std::string& path);

std::pair<PolicyParams, CheckpointMeta> load_checkpoint(const std::string& path);

}  // namespace ttr::nn

#include "ttr/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace ttr::nn {

namespace {

constexpr char kMagic[8] = {'T', 'T', 'R', 'C', 'K', 'P', 'T', '1'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

std::uint64_t fnv1a(const char* data, std::size_t n) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= static_cast<unsigned char>(data[i]);
    hash *= 1099511628211ULL;
  }
  return hash;
}

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint truncated");
  return v;
}

}  // namespace

void save_checkpoint(const PolicyParams& params, const CheckpointMeta& meta,
                     const std::string& path) {
  auto views = tensor_views(params);

  nlohmann::json manifest;
  manifest["format"] = 1;
  manifest["stage"] = meta.stage;
  manifest["seed"] = meta.seed;
  manifest["actor_input"] = "ahead_first";
  manifest["net"] = {{"input_dim", params.config.input_dim},
                     {"hidden", params.config.hidden},
                     {"bn_momentum", params.config.bn_momentum},
                     {"bn_epsilon", params.config.bn_epsilon}};
  std::uint64_t count = 0;
  for (const TensorView& t : views) {
    manifest["tensors"].push_back(
        {{"name", t.name}, {"rows", t.rows}, {"cols", t.cols}});
    count += static_cast<std::uint64_t>(t.size);
  }
  manifest["value_count"] = count;
  const std::string mtext = manifest.dump();

  std::vector<char> payload(count * sizeof(float));
  std::size_t offset = 0;
  for (const TensorView& t : views) {
    std::memcpy(payload.data() + offset, t.data, t.size * sizeof(float));
    offset += t.size * sizeof(float);
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  write_pod(os, static_cast<std::uint32_t>(mtext.size()));
  os.write(mtext.data(), static_cast<std::streamsize>(mtext.size()));
  os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  write_pod(os, fnv1a(payload.data(), payload.size()));
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

std::pair<PolicyParams, CheckpointMeta> load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  const auto mlen = read_pod<std::uint32_t>(is);
  std::string mtext(mlen, '\0');
  is.read(mtext.data(), mlen);
  if (!is) throw std::runtime_error("checkpoint truncated");

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(mtext);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad checkpoint manifest: ") + e.what());
  }
  if (manifest.value("format", 0) != 1)
    throw std::runtime_error("unsupported checkpoint format");

  NetConfig cfg;
  cfg.input_dim = manifest.at("net").at("input_dim").get<int>();
  cfg.hidden = manifest.at("net").at("hidden").get<int>();
  cfg.bn_momentum = manifest.at("net").at("bn_momentum").get<float>();
  cfg.bn_epsilon = manifest.at("net").at("bn_epsilon").get<float>();

  PolicyParams params = PolicyParams::init(cfg, 0);
  auto views = tensor_views(params);
  const auto& tensors = manifest.at("tensors");
  if (tensors.size() != views.size())
    throw std::runtime_error("checkpoint tensor table mismatch");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    if (tensors[i].at("name").get<std::string>() != views[i].name ||
        tensors[i].at("rows").get<Eigen::Index>() != views[i].rows ||
        tensors[i].at("cols").get<Eigen::Index>() != views[i].cols)
      throw std::runtime_error("checkpoint shape mismatch for " + views[i].name);
    count += static_cast<std::uint64_t>(views[i].size);
  }
  if (manifest.at("value_count").get<std::uint64_t>() != count)
    throw std::runtime_error("checkpoint value count mismatch");

  std::vector<char> payload(count * sizeof(float));
  is.read(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!is) throw std::runtime_error("checkpoint truncated");
  const auto stored = read_pod<std::uint64_t>(is);
  if (stored != fnv1a(payload.data(), payload.size()))
    throw std::runtime_error("checkpoint checksum mismatch");

  std::size_t offset = 0;
  for (TensorView& t : views) {
    std::memcpy(t.data, payload.data() + offset, t.size * sizeof(float));
    offset += t.size * sizeof(float);
  }

  CheckpointMeta meta;
  meta.stage = manifest.value("stage", 1);
  meta.seed = manifest.value("seed", std::uint64_t{0});
  return {std::move(params), meta};
}

}  // namespace ttr::nn

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/policy/manager_policy.hpp"
#include "skillrl/policy/snn_policy.hpp"

namespace skillrl {

static_assert(std::endian::native == std::endian::little, "checkpoint format is little-endian");

enum class PolicyKind : std::uint8_t { kFlatGaussian = 0, kSnn = 1, kManager = 2 };

// Versioned header (magic, version, architecture descriptor) followed by the
// flat 64-bit parameter vector, little-endian.
struct CheckpointMeta {
  std::uint32_t version = 1;
  PolicyKind kind = PolicyKind::kFlatGaussian;
  Integration integration = Integration::kConcat;  // meaningful only for kSnn
  std::int32_t obs_dim = 0;
  std::int32_t action_dim = 0;   // K logits for the manager
  std::int32_t latent_count = 0; // 0 unless kSnn
  std::vector<std::int32_t> hidden;
};

namespace detail {

inline constexpr char kCheckpointMagic[8] = {'S', 'K', 'R', 'L', 'P', 'O', 'L', '1'};

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is, const std::string& what) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) fail_runtime("checkpoint: truncated while reading ", what);
  return v;
}

}  // namespace detail

inline void save_checkpoint(const std::string& path, const CheckpointMeta& meta, std::span<const double> params) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail_runtime("checkpoint: cannot open '", path, "' for writing");
  os.write(detail::kCheckpointMagic, sizeof(detail::kCheckpointMagic));
  detail::write_pod(os, meta.version);
  detail::write_pod(os, static_cast<std::uint8_t>(meta.kind));
  detail::write_pod(os, static_cast<std::uint8_t>(meta.integration));
  detail::write_pod(os, static_cast<std::uint16_t>(0));
  detail::write_pod(os, meta.obs_dim);
  detail::write_pod(os, meta.action_dim);
  detail::write_pod(os, meta.latent_count);
  detail::write_pod(os, static_cast<std::int32_t>(meta.hidden.size()));
  for (auto h : meta.hidden) detail::write_pod(os, h);
  detail::write_pod(os, static_cast<std::uint64_t>(params.size()));
  os.write(reinterpret_cast<const char*>(params.data()), static_cast<std::streamsize>(params.size() * 8));
  if (!os) fail_runtime("checkpoint: write failed for '", path, "'");
}

inline std::pair<CheckpointMeta, std::vector<double>> load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail_runtime("checkpoint: cannot open '", path, "'");
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, detail::kCheckpointMagic, 8) != 0)
    fail_runtime("checkpoint: '", path, "' has no SKRLPOL1 magic");
  CheckpointMeta meta;
  meta.version = detail::read_pod<std::uint32_t>(is, "version");
  if (meta.version != 1) fail_runtime("checkpoint: unsupported version ", meta.version);
  meta.kind = static_cast<PolicyKind>(detail::read_pod<std::uint8_t>(is, "kind"));
  meta.integration = static_cast<Integration>(detail::read_pod<std::uint8_t>(is, "integration"));
  detail::read_pod<std::uint16_t>(is, "padding");
  meta.obs_dim = detail::read_pod<std::int32_t>(is, "obs_dim");
  meta.action_dim = detail::read_pod<std::int32_t>(is, "action_dim");
  meta.latent_count = detail::read_pod<std::int32_t>(is, "latent_count");
  const auto n_hidden = detail::read_pod<std::int32_t>(is, "hidden count");
  for (std::int32_t i = 0; i < n_hidden; ++i) meta.hidden.push_back(detail::read_pod<std::int32_t>(is, "hidden"));
  const auto count = detail::read_pod<std::uint64_t>(is, "param count");
  std::vector<double> params(count);
  if (!is.read(reinterpret_cast<char*>(params.data()), static_cast<std::streamsize>(count * 8)))
    fail_runtime("checkpoint: truncated parameter vector in '", path, "'");
  return {meta, std::move(params)};
}

inline std::vector<int> to_int_vector(const std::vector<std::int32_t>& v) { return {v.begin(), v.end()}; }

inline void save_policy(const std::string& path, const SnnPolicy& p) {
  CheckpointMeta meta;
  meta.kind = PolicyKind::kSnn;
  meta.integration = p.integration();
  meta.obs_dim = p.obs_dim();
  meta.action_dim = p.action_dim();
  meta.latent_count = p.latent_count();
  for (int h : p.net().mlp().spec().hidden) meta.hidden.push_back(h);
  save_checkpoint(path, meta, p.net().params().values());
}

inline void save_policy(const std::string& path, const FlatGaussianPolicy& p) {
  CheckpointMeta meta;
  meta.kind = PolicyKind::kFlatGaussian;
  meta.obs_dim = p.obs_dim();
  meta.action_dim = p.action_dim();
  for (int h : p.net().mlp().spec().hidden) meta.hidden.push_back(h);
  save_checkpoint(path, meta, p.net().params().values());
}

inline void save_policy(const std::string& path, const ManagerPolicy& p) {
  CheckpointMeta meta;
  meta.kind = PolicyKind::kManager;
  meta.obs_dim = p.obs_dim();
  meta.action_dim = p.skill_count();
  for (int h : p.mlp().spec().hidden) meta.hidden.push_back(h);
  save_checkpoint(path, meta, p.params().values());
}

inline SnnPolicy load_snn_policy(const std::string& path) {
  auto [meta, params] = load_checkpoint(path);
  if (meta.kind != PolicyKind::kSnn)
    fail_runtime("checkpoint: '", path, "' holds kind ", static_cast<int>(meta.kind), ", expected an SNN policy");
  SnnPolicy p(meta.obs_dim, meta.latent_count, meta.action_dim, meta.integration, to_int_vector(meta.hidden));
  if (static_cast<int>(params.size()) != p.net().param_count())
    fail_runtime("checkpoint: '", path, "' carries ", params.size(), " params, architecture (obs_dim=",
                 meta.obs_dim, ", K=", meta.latent_count, ", ", integration_name(meta.integration), ") needs ",
                 p.net().param_count());
  p.net().params().set_values(params);
  return p;
}

inline FlatGaussianPolicy load_flat_policy(const std::string& path) {
  auto [meta, params] = load_checkpoint(path);
  if (meta.kind != PolicyKind::kFlatGaussian)
    fail_runtime("checkpoint: '", path, "' holds kind ", static_cast<int>(meta.kind),
                 ", expected a flat Gaussian policy");
  FlatGaussianPolicy p(meta.obs_dim, meta.action_dim, to_int_vector(meta.hidden));
  if (static_cast<int>(params.size()) != p.net().param_count())
    fail_runtime("checkpoint: '", path, "' carries ", params.size(), " params, expected ", p.net().param_count());
  p.net().params().set_values(params);
  return p;
}

inline ManagerPolicy load_manager_policy(const std::string& path) {
  auto [meta, params] = load_checkpoint(path);
  if (meta.kind != PolicyKind::kManager)
    fail_runtime("checkpoint: '", path, "' holds kind ", static_cast<int>(meta.kind), ", expected a manager policy");
  ManagerPolicy p(meta.obs_dim, meta.action_dim, to_int_vector(meta.hidden));
  if (static_cast<int>(params.size()) != p.param_count())
    fail_runtime("checkpoint: '", path, "' carries ", params.size(), " params, expected ", p.param_count());
  p.params().set_values(params);
  return p;
}

}  // namespace skillrl

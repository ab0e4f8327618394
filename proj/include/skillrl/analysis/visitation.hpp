#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "skillrl/core/rng.hpp"
#include "skillrl/envs/task.hpp"
#include "skillrl/io/csv.hpp"
#include "skillrl/training/hierarchy.hpp"

namespace skillrl {

// One row per low-level step: where the CoM was and which latent was active.
struct VisitationRecord {
  int rollout_id = 0;
  int timestep = 0;
  double x = 0.0;
  double y = 0.0;
  int latent = 0;

  bool operator==(const VisitationRecord&) const = default;
};

enum class LatentMode { kPerRolloutUniform, kFixed, kRandomManager };

// The visitation protocol: rollouts from the deterministic reset, recording
// the CoM after every step. Latent selection is per-rollout-uniform, a fixed
// code, or resampled uniformly every switch_time steps (random manager).
template <class Env>
std::vector<VisitationRecord> visitation_run(const SnnPolicy& policy, Env& env, int n_rollouts, int horizon,
                                             LatentMode mode, RngStream rng, int fixed_latent = 0,
                                             int switch_time = 50) {
  std::vector<VisitationRecord> records;
  records.reserve(static_cast<std::size_t>(n_rollouts) * static_cast<std::size_t>(horizon));
  MlpWorkspace ws;
  for (int r = 0; r < n_rollouts; ++r) {
    auto rollout_rng = rng.substream(static_cast<std::uint64_t>(r) + 1);
    auto latent_rng = rollout_rng.substream(streams::kLatent);
    auto env_rng = rollout_rng.substream(streams::kEnv);
    auto action_rng = rollout_rng.substream(streams::kAction);
    FactoredObservation obs = env.reset(env_rng);
    int z = fixed_latent;
    if (mode == LatentMode::kPerRolloutUniform) z = latent_rng.uniform_int(policy.latent_count());
    for (int t = 0; t < horizon; ++t) {
      if (mode == LatentMode::kRandomManager && t % switch_time == 0)
        z = latent_rng.uniform_int(policy.latent_count());
      const auto dist = policy.forward(obs.agent, z, ws);
      const auto action = dist.sample(action_rng);
      auto result = env.step(action);
      const Vec2 com = env.com();
      records.push_back({r, t, com.x, com.y, z});
      obs = std::move(result.obs);
      if (result.done) break;
    }
  }
  return records;
}

// Exploration baseline: i.i.d. Gaussian actions (mu=0, sigma=1) clipped by
// the environment to [-1,1].
template <class Env>
std::vector<VisitationRecord> gaussian_noise_run(Env& env, int n_rollouts, int horizon, RngStream rng) {
  std::vector<VisitationRecord> records;
  records.reserve(static_cast<std::size_t>(n_rollouts) * static_cast<std::size_t>(horizon));
  for (int r = 0; r < n_rollouts; ++r) {
    auto rollout_rng = rng.substream(static_cast<std::uint64_t>(r) + 1);
    auto env_rng = rollout_rng.substream(streams::kEnv);
    auto action_rng = rollout_rng.substream(streams::kAction);
    env.reset(env_rng);
    for (int t = 0; t < horizon; ++t) {
      const double action[2] = {action_rng.normal(), action_rng.normal()};
      auto result = env.step(action);
      const Vec2 com = env.com();
      records.push_back({r, t, com.x, com.y, 0});
      if (result.done) break;
    }
  }
  return records;
}

inline void visitation_to_csv(std::ostream& os, const std::vector<VisitationRecord>& records) {
  os << "rollout_id,timestep,x,y,latent\n";
  os.precision(17);
  for (const auto& r : records) os << r.rollout_id << "," << r.timestep << "," << r.x << "," << r.y << "," << r.latent << "\n";
}

inline std::vector<VisitationRecord> visitation_from_csv(std::istream& is) {
  const CsvTable table = read_csv(is);
  const std::vector<std::string> expected{"rollout_id", "timestep", "x", "y", "latent"};
  if (table.header != expected) fail_runtime("visitation csv: unexpected header");
  std::vector<VisitationRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows)
    records.push_back({csv_int(row[0]), csv_int(row[1]), csv_double(row[2]), csv_double(row[3]), csv_int(row[4])});
  return records;
}

}  // namespace skillrl

#pragma once

#include <span>
#include <vector>

#include "skillrl/core/rng.hpp"
#include "skillrl/core/trajectory.hpp"
#include "skillrl/envs/task.hpp"
#include "skillrl/policy/snn_policy.hpp"

namespace skillrl {

struct PretrainConfig {
  int latent_count = 6;
  Integration integration = Integration::kBilinear;
  double alpha_h = 0.01;
  int batch_size = 10000;  // timesteps per iteration
  int horizon = 500;
  int n_iterations = 200;
  std::uint64_t seed = 0;
  double mesh_density = 10.0;
  double posterior_floor = 1e-3;
  std::vector<int> hidden{32, 32};

  void validate() const {
    if (latent_count < 2) fail_invalid("PretrainConfig: K ", latent_count, " must be >= 2");
    if (batch_size < horizon)
      fail_invalid("PretrainConfig: batch_size ", batch_size, " must be >= horizon ", horizon);
    if (horizon < 1) fail_invalid("PretrainConfig: horizon ", horizon, " must be >= 1");
    if (n_iterations < 1) fail_invalid("PretrainConfig: n_iterations ", n_iterations, " must be >= 1");
  }
};

// One rollout of the SNN with a fixed latent code. Records the observation
// seen before each action and the CoM reached after it.
template <class Env>
Trajectory rollout_snn(const SnnPolicy& policy, Env& env, int latent, int horizon, RngStream rollout_rng) {
  Trajectory traj;
  traj.latent = latent;
  auto env_rng = rollout_rng.substream(streams::kEnv);
  auto action_rng = rollout_rng.substream(streams::kAction);
  FactoredObservation obs = env.reset(env_rng);
  MlpWorkspace ws;
  for (int t = 0; t < horizon; ++t) {
    const auto dist = policy.forward(obs.agent, latent, ws);
    auto action = dist.sample(action_rng);
    traj.observations.push_back(obs);
    traj.log_probs.push_back(dist.log_prob(action));
    auto result = env.step(action);
    traj.actions.push_back(std::move(action));
    traj.rewards.push_back(result.reward);
    traj.com_positions.push_back(env.com());
    obs = std::move(result.obs);
    if (result.done) break;
  }
  traj.raw_rewards = traj.rewards;
  return traj;
}

// Algorithm-1 collection: rollouts until the batch holds at least batch_size
// timesteps; the latent is drawn uniformly once per rollout and held fixed.
template <class Env>
TrajectoryBatch collect_pretrain_batch(const SnnPolicy& policy, Env& env, const PretrainConfig& cfg,
                                       RngStream batch_rng) {
  if (cfg.horizon < 1 || cfg.batch_size < 1)
    fail_invalid("collect_pretrain_batch: horizon and batch_size must be >= 1");
  TrajectoryBatch batch;
  batch.latent_count = policy.latent_count();
  auto latent_rng = batch_rng.substream(streams::kLatent);
  for (int r = 0; static_cast<int>(batch.total_steps()) < cfg.batch_size; ++r) {
    const int z = latent_rng.uniform_int(policy.latent_count());
    batch.trajectories.push_back(
        rollout_snn(policy, env, z, cfg.horizon, batch_rng.substream(static_cast<std::uint64_t>(r) + 1000)));
  }
  batch.validate();
  return batch;
}

// Rollout of a plain Gaussian policy over the full observation, optionally
// with the CoM speed proxy reward added to the task reward (the flat
// baseline on sparse tasks).
template <class Env>
Trajectory rollout_flat(const FlatGaussianPolicy& policy, Env& env, int horizon, bool add_speed_bonus,
                        RngStream rollout_rng) {
  Trajectory traj;
  traj.latent = 0;
  auto env_rng = rollout_rng.substream(streams::kEnv);
  auto action_rng = rollout_rng.substream(streams::kAction);
  FactoredObservation obs = env.reset(env_rng);
  MlpWorkspace ws;
  for (int t = 0; t < horizon; ++t) {
    const auto full = obs.full();
    const auto dist = policy.forward(full, ws);
    auto action = dist.sample(action_rng);
    traj.observations.push_back(obs);
    traj.log_probs.push_back(dist.log_prob(action));
    auto result = env.step(action);
    double reward = result.reward;
    if (add_speed_bonus) reward += env.state().velocity.norm();
    traj.actions.push_back(std::move(action));
    traj.rewards.push_back(reward);
    traj.raw_rewards.push_back(result.reward);
    traj.com_positions.push_back(env.com());
    obs = std::move(result.obs);
    if (result.done) break;
  }
  return traj;
}

template <class Env>
TrajectoryBatch collect_flat_batch(const FlatGaussianPolicy& policy, Env& env, int horizon, int batch_size,
                                   bool add_speed_bonus, RngStream batch_rng) {
  TrajectoryBatch batch;
  batch.latent_count = 1;
  for (int r = 0; static_cast<int>(batch.total_steps()) < batch_size; ++r)
    batch.trajectories.push_back(rollout_flat(policy, env, horizon, add_speed_bonus,
                                              batch_rng.substream(static_cast<std::uint64_t>(r) + 1000)));
  return batch;
}

}  // namespace skillrl

#pragma once

#include <vector>

#include "skillrl/mi/visitation_grid.hpp"
#include "skillrl/training/rollout.hpp"
#include "skillrl/trpo/problems.hpp"
#include "skillrl/trpo/trpo.hpp"

namespace skillrl {

struct PretrainMetrics {
  double mean_episode_return_raw = 0.0;   // undiscounted, environment rewards
  double mean_step_reward_raw = 0.0;
  std::vector<double> per_latent_return;  // mean episode return per latent (-inf absent -> 0 with count 0)
  std::vector<int> per_latent_rollouts;
  std::size_t cells_visited = 0;
  std::size_t batch_steps = 0;
  TrpoDiagnostics trpo;
};

// Baseline features for the pre-training phase: the latent is part of the
// observation, so the feature row is [obs ; one_hot(z)] plus time terms.
inline std::vector<double> pretrain_feature_row(const FactoredObservation& obs, int latent, int latent_count,
                                                double t_frac) {
  auto with_z = obs.full();
  const auto zv = one_hot(latent, latent_count);
  with_z.insert(with_z.end(), zv.begin(), zv.end());
  return LinearBaseline::features(with_z, t_frac);
}

// One Algorithm-1 iteration: collect with per-rollout latents, rebuild the
// visitation grid from this batch, apply the Eq-1 bonus, take a TRPO step
// with the latent on the observation pathway, then refit the baseline.
template <class Env>
PretrainMetrics pretrain_iteration(SnnPolicy& policy, Env& env, const PretrainConfig& cfg, const TrpoConfig& trpo,
                                   LinearBaseline& baseline, int iteration, RngStream root) {
  cfg.validate();
  TrajectoryBatch batch =
      collect_pretrain_batch(policy, env, cfg, root.substream(static_cast<std::uint64_t>(iteration) + 1));

  const VisitationGrid grid = VisitationGrid::accumulate(batch, cfg.mesh_density);
  apply_mi_bonus(batch, grid, MiConfig{cfg.alpha_h, cfg.posterior_floor});

  std::vector<std::vector<double>> reward_seqs;
  reward_seqs.reserve(batch.trajectories.size());
  for (const auto& t : batch.trajectories) reward_seqs.push_back(t.rewards);
  const auto adv = compute_advantages(reward_seqs, baseline, trpo.discount, [&](std::size_t traj, std::size_t t) {
    return pretrain_feature_row(batch.trajectories[traj].observations[t], batch.trajectories[traj].latent,
                                batch.latent_count, static_cast<double>(t) / cfg.horizon);
  });

  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> actions;
  std::vector<double> old_log_probs;
  inputs.reserve(adv.advantages.size());
  actions.reserve(adv.advantages.size());
  old_log_probs.reserve(adv.advantages.size());
  for (const auto& traj : batch.trajectories) {
    for (std::size_t t = 0; t < traj.length(); ++t) {
      inputs.push_back(policy.embed(traj.observations[t].agent, traj.latent));
      actions.push_back(traj.actions[t]);
      old_log_probs.push_back(traj.log_probs[t]);
    }
  }

  PretrainMetrics metrics;
  metrics.batch_steps = batch.total_steps();
  metrics.cells_visited = grid.cells_visited();
  metrics.per_latent_return.assign(static_cast<std::size_t>(batch.latent_count), 0.0);
  metrics.per_latent_rollouts.assign(static_cast<std::size_t>(batch.latent_count), 0);
  double total_raw = 0.0;
  for (const auto& traj : batch.trajectories) {
    double ep = 0.0;
    for (double r : traj.raw_rewards) ep += r;
    total_raw += ep;
    metrics.per_latent_return[static_cast<std::size_t>(traj.latent)] += ep;
    ++metrics.per_latent_rollouts[static_cast<std::size_t>(traj.latent)];
  }
  metrics.mean_episode_return_raw = total_raw / static_cast<double>(batch.trajectories.size());
  metrics.mean_step_reward_raw = total_raw / static_cast<double>(batch.total_steps());
  for (std::size_t z = 0; z < metrics.per_latent_return.size(); ++z)
    if (metrics.per_latent_rollouts[z] > 0) metrics.per_latent_return[z] /= metrics.per_latent_rollouts[z];

  GaussianBatchProblem problem(policy.net(), std::move(inputs), std::move(actions), std::move(old_log_probs),
                               adv.advantages);
  metrics.trpo = trpo_step(problem, trpo);

  baseline.fit(adv.features, adv.returns);
  return metrics;
}

}  // namespace skillrl

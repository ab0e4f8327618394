#pragma once

#include <vector>

#include "skillrl/envs/pretrain_env.hpp"
#include "skillrl/training/rollout.hpp"
#include "skillrl/trpo/problems.hpp"
#include "skillrl/trpo/trpo.hpp"

namespace skillrl {

struct FlatMetrics {
  double mean_episode_return = 0.0;      // with the shaped reward, if enabled
  double mean_episode_task_return = 0.0; // raw task reward only
  std::size_t batch_steps = 0;
  TrpoDiagnostics trpo;
};

// Plain TRPO iteration for a uni-modal Gaussian policy on any task env.
// add_speed_bonus turns on the CoM proxy shaping used by the flat baseline.
template <class Env>
FlatMetrics flat_iteration(FlatGaussianPolicy& policy, Env& env, int horizon, int batch_size, bool add_speed_bonus,
                           const TrpoConfig& trpo, LinearBaseline& baseline, int iteration, RngStream root) {
  TrajectoryBatch batch = collect_flat_batch(policy, env, horizon, batch_size, add_speed_bonus,
                                             root.substream(static_cast<std::uint64_t>(iteration) + 1));
  std::vector<std::vector<double>> reward_seqs;
  reward_seqs.reserve(batch.trajectories.size());
  for (const auto& t : batch.trajectories) reward_seqs.push_back(t.rewards);
  const auto adv = compute_advantages(reward_seqs, baseline, trpo.discount, [&](std::size_t traj, std::size_t t) {
    return LinearBaseline::features(batch.trajectories[traj].observations[t].full(),
                                    static_cast<double>(t) / horizon);
  });

  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> actions;
  std::vector<double> old_log_probs;
  for (const auto& traj : batch.trajectories) {
    for (std::size_t t = 0; t < traj.length(); ++t) {
      inputs.push_back(traj.observations[t].full());
      actions.push_back(traj.actions[t]);
      old_log_probs.push_back(traj.log_probs[t]);
    }
  }

  FlatMetrics metrics;
  metrics.batch_steps = batch.total_steps();
  double shaped = 0.0, raw = 0.0;
  for (const auto& traj : batch.trajectories) {
    for (double r : traj.rewards) shaped += r;
    for (double r : traj.raw_rewards) raw += r;
  }
  metrics.mean_episode_return = shaped / static_cast<double>(batch.trajectories.size());
  metrics.mean_episode_task_return = raw / static_cast<double>(batch.trajectories.size());

  GaussianBatchProblem problem(policy.net(), std::move(inputs), std::move(actions), std::move(old_log_probs),
                               adv.advantages);
  metrics.trpo = trpo_step(problem, trpo);
  baseline.fit(adv.features, adv.returns);
  return metrics;
}

struct MultiPolicyResult {
  std::vector<FlatGaussianPolicy> skills;
  std::size_t total_env_steps = 0;
};

// The multi-policy baseline: K uni-modal policies trained from scratch on the
// proxy reward, each from a distinct seed. Costs K times the SNN's samples.
inline MultiPolicyResult train_multipolicy_skills(const PretrainConfig& cfg, const TrpoConfig& trpo,
                                                  DynamicsConfig dyn = {}) {
  cfg.validate();
  MultiPolicyResult result;
  for (int k = 0; k < cfg.latent_count; ++k) {
    RngStream root(cfg.seed, detail::mix64(static_cast<std::uint64_t>(k) + 77));
    FlatGaussianPolicy policy(kAgentDim, 2, cfg.hidden);
    auto init_rng = root.substream(streams::kPolicyInit);
    policy.init(init_rng);
    PretrainEnv env(dyn);
    LinearBaseline baseline;
    for (int it = 0; it < cfg.n_iterations; ++it) {
      const auto m =
          flat_iteration(policy, env, cfg.horizon, cfg.batch_size, false, trpo, baseline, it, root);
      result.total_env_steps += m.batch_steps;
    }
    result.skills.push_back(std::move(policy));
  }
  return result;
}

}  // namespace skillrl

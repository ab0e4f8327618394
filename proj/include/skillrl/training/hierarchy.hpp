#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "skillrl/core/rng.hpp"
#include "skillrl/envs/task.hpp"
#include "skillrl/policy/manager_policy.hpp"
#include "skillrl/policy/snn_policy.hpp"
#include "skillrl/training/rollout.hpp"
#include "skillrl/trpo/problems.hpp"
#include "skillrl/trpo/trpo.hpp"

namespace skillrl {

enum class SkillMode { kSnn, kMultiPolicy };

// Frozen low-level skills: either one SNN whose latent input is driven by the
// manager, or a bank of independently trained uni-modal policies indexed by
// the manager's choice. Skills act on the agent-space block only.
class SkillBank {
 public:
  explicit SkillBank(SnnPolicy snn) : skills_(std::move(snn)) {}
  explicit SkillBank(std::vector<FlatGaussianPolicy> bank) : skills_(std::move(bank)) {
    const auto& b = std::get<std::vector<FlatGaussianPolicy>>(skills_);
    if (b.empty()) fail_invalid("SkillBank: empty multi-policy bank");
  }

  SkillMode mode() const {
    return std::holds_alternative<SnnPolicy>(skills_) ? SkillMode::kSnn : SkillMode::kMultiPolicy;
  }

  int skill_count() const {
    if (const auto* snn = std::get_if<SnnPolicy>(&skills_)) return snn->latent_count();
    return static_cast<int>(std::get<std::vector<FlatGaussianPolicy>>(skills_).size());
  }

  int obs_dim() const {
    if (const auto* snn = std::get_if<SnnPolicy>(&skills_)) return snn->obs_dim();
    return std::get<std::vector<FlatGaussianPolicy>>(skills_).front().obs_dim();
  }

  GaussianActionDist act_dist(std::span<const double> agent_obs, int z, MlpWorkspace& ws) const {
    if (const auto* snn = std::get_if<SnnPolicy>(&skills_)) return snn->forward(agent_obs, z, ws);
    const auto& bank = std::get<std::vector<FlatGaussianPolicy>>(skills_);
    if (z < 0 || z >= static_cast<int>(bank.size()))
      fail_invalid("SkillBank: skill index ", z, " outside [0,", bank.size(), ")");
    return bank[static_cast<std::size_t>(z)].forward(agent_obs, ws);
  }

  // Concatenated parameter bits, for the freezing invariant.
  std::vector<double> parameter_snapshot() const {
    std::vector<double> all;
    if (const auto* snn = std::get_if<SnnPolicy>(&skills_)) {
      all = snn->net().params().values();
    } else {
      for (const auto& p : std::get<std::vector<FlatGaussianPolicy>>(skills_)) {
        const auto& v = p.net().params().values();
        all.insert(all.end(), v.begin(), v.end());
      }
    }
    return all;
  }

  const SnnPolicy& snn() const { return std::get<SnnPolicy>(skills_); }

 private:
  std::variant<SnnPolicy, std::vector<FlatGaussianPolicy>> skills_;
};

struct DownstreamConfig {
  TaskId task = TaskId::kMaze0;
  int switch_time = 50;   // gather desk default is 10
  int batch_size = 10000; // low-level timesteps per iteration
  int horizon = 400;
  int n_iterations = 300;
  std::uint64_t seed = 0;
  SkillMode skill_mode = SkillMode::kSnn;
  std::vector<int> manager_hidden{32, 32};

  void validate() const {
    if (switch_time < 1) fail_invalid("DownstreamConfig: switch_time ", switch_time, " must be >= 1");
    if (horizon < switch_time)
      fail_invalid("DownstreamConfig: horizon ", horizon, " must be >= switch_time ", switch_time);
    if (n_iterations < 1) fail_invalid("DownstreamConfig: n_iterations must be >= 1");
  }
};

// Manager-level trajectory: one macro step per skill commitment window.
struct MacroTrajectory {
  std::vector<std::vector<double>> observations;  // full observation at each switch
  std::vector<int> skills;
  std::vector<double> rewards;     // sum of low-level rewards in the window
  std::vector<double> log_probs;   // manager log-prob of the sampled skill
  std::vector<int> window_lengths; // low-level steps actually executed
  double low_level_reward_sum = 0.0;
  int low_level_steps = 0;

  std::size_t length() const { return rewards.size(); }
};

struct MacroBatch {
  std::vector<MacroTrajectory> trajectories;
  int low_level_steps = 0;
};

// A skill is selected at t in {0, T, 2T, ...} from the full observation and
// committed for the next T low-level steps; early termination truncates the
// final window. A null manager samples skills uniformly (the randomly
// initialized manager of the exploration study).
inline MacroTrajectory hierarchical_rollout(const ManagerPolicy* manager, const SkillBank& skills, TaskEnv& env,
                                            int switch_time, int horizon, RngStream rollout_rng,
                                            std::vector<Vec2>* com_trace = nullptr) {
  if (switch_time < 1) fail_invalid("hierarchical_rollout: switch_time must be >= 1");
  MacroTrajectory traj;
  auto env_rng = rollout_rng.substream(streams::kEnv);
  auto manager_rng = rollout_rng.substream(streams::kManager);
  auto action_rng = rollout_rng.substream(streams::kAction);
  FactoredObservation obs = env_reset(env, env_rng);
  MlpWorkspace skill_ws, manager_ws;
  bool done = false;
  for (int t = 0; t < horizon && !done; t += switch_time) {
    const auto full = obs.full();
    int z;
    double log_prob;
    if (manager != nullptr) {
      const auto dist = manager->forward(full, manager_ws);
      z = dist.sample(manager_rng);
      log_prob = dist.log_prob(z);
    } else {
      z = manager_rng.uniform_int(skills.skill_count());
      log_prob = -std::log(static_cast<double>(skills.skill_count()));
    }
    double window_reward = 0.0;
    int window_steps = 0;
    const int window_end = std::min(t + switch_time, horizon);
    for (int u = t; u < window_end; ++u) {
      const auto dist = skills.act_dist(obs.agent, z, skill_ws);
      const auto action = dist.sample(action_rng);
      auto result = env_step(env, action);
      window_reward += result.reward;
      traj.low_level_reward_sum += result.reward;
      ++window_steps;
      ++traj.low_level_steps;
      if (com_trace != nullptr) com_trace->push_back(env_com(env));
      obs = std::move(result.obs);
      if (result.done) {
        done = true;
        break;
      }
    }
    traj.observations.push_back(full);
    traj.skills.push_back(z);
    traj.rewards.push_back(window_reward);
    traj.log_probs.push_back(log_prob);
    traj.window_lengths.push_back(window_steps);
  }
  return traj;
}

struct DownstreamMetrics {
  double mean_episode_return = 0.0;  // task score; for mazes this is the success fraction
  int episodes = 0;
  bool reward_conservation_ok = true;
  bool skills_frozen = true;
  TrpoDiagnostics trpo;
};

// Exact macro/micro conservation: window sums must re-add to the low-level
// total. Task rewards are integers so the check is exact.
inline bool macro_reward_conservation(const MacroTrajectory& t) {
  double macro_sum = 0.0;
  for (double r : t.rewards) macro_sum += r;
  return macro_sum == t.low_level_reward_sum;
}

inline MacroBatch collect_macro_batch(const ManagerPolicy& manager, const SkillBank& skills, TaskEnv& env,
                                      const DownstreamConfig& cfg, RngStream batch_rng) {
  MacroBatch batch;
  for (int r = 0; batch.low_level_steps < cfg.batch_size; ++r) {
    auto traj = hierarchical_rollout(&manager, skills, env, cfg.switch_time, cfg.horizon,
                                     batch_rng.substream(static_cast<std::uint64_t>(r) + 1000));
    batch.low_level_steps += traj.low_level_steps;
    batch.trajectories.push_back(std::move(traj));
  }
  return batch;
}

// One manager update: collect a macro batch over frozen skills, compute
// per-macro-step discounted advantages, and apply TRPO on the categorical
// policy. Only manager parameters move; the skill snapshot is compared
// bitwise to enforce freezing.
inline DownstreamMetrics downstream_iteration(ManagerPolicy& manager, const SkillBank& skills, TaskEnv& env,
                                              const DownstreamConfig& cfg, const TrpoConfig& trpo,
                                              LinearBaseline& baseline, int iteration, RngStream root) {
  cfg.validate();
  const auto skill_bits_before = skills.parameter_snapshot();
  MacroBatch batch =
      collect_macro_batch(manager, skills, env, cfg, root.substream(static_cast<std::uint64_t>(iteration) + 1));

  DownstreamMetrics metrics;
  metrics.episodes = static_cast<int>(batch.trajectories.size());
  const int max_windows = (cfg.horizon + cfg.switch_time - 1) / cfg.switch_time;
  std::vector<std::vector<double>> reward_seqs;
  double total_return = 0.0;
  for (const auto& t : batch.trajectories) {
    metrics.reward_conservation_ok &= macro_reward_conservation(t);
    total_return += t.low_level_reward_sum;
    reward_seqs.push_back(t.rewards);
  }
  metrics.mean_episode_return = total_return / static_cast<double>(batch.trajectories.size());

  const auto adv = compute_advantages(reward_seqs, baseline, trpo.discount, [&](std::size_t traj, std::size_t t) {
    return LinearBaseline::features(batch.trajectories[traj].observations[t],
                                    static_cast<double>(t) / max_windows);
  });

  std::vector<std::vector<double>> inputs;
  std::vector<int> actions;
  std::vector<double> old_log_probs;
  for (const auto& t : batch.trajectories) {
    for (std::size_t w = 0; w < t.length(); ++w) {
      inputs.push_back(t.observations[w]);
      actions.push_back(t.skills[w]);
      old_log_probs.push_back(t.log_probs[w]);
    }
  }
  CategoricalBatchProblem problem(manager, std::move(inputs), std::move(actions), std::move(old_log_probs),
                                  adv.advantages);
  metrics.trpo = trpo_step(problem, trpo);
  baseline.fit(adv.features, adv.returns);

  metrics.skills_frozen = (skills.parameter_snapshot() == skill_bits_before);
  return metrics;
}

// Mean episode return over evaluation rollouts with the live manager.
inline double evaluate_manager(const ManagerPolicy& manager, const SkillBank& skills, TaskEnv& env,
                               const DownstreamConfig& cfg, int episodes, RngStream eval_rng) {
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    const auto traj = hierarchical_rollout(&manager, skills, env, cfg.switch_time, cfg.horizon,
                                           eval_rng.substream(static_cast<std::uint64_t>(e) + 1));
    total += traj.low_level_reward_sum;
  }
  return total / episodes;
}

}  // namespace skillrl

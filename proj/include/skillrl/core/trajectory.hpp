#pragma once

#include <cstddef>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/observation.hpp"
#include "skillrl/core/vec2.hpp"

namespace skillrl {

// One rollout: per-timestep sequences plus the latent code that was fixed for
// the whole rollout. `rewards` is what the optimizer sees (possibly modified
// by the MI bonus); `raw_rewards` keeps the unmodified environment rewards.
struct Trajectory {
  std::vector<FactoredObservation> observations;
  std::vector<std::vector<double>> actions;
  std::vector<double> rewards;
  std::vector<double> raw_rewards;
  std::vector<double> log_probs;
  std::vector<Vec2> com_positions;
  int latent = 0;

  std::size_t length() const { return rewards.size(); }

  void validate(int latent_count) const {
    const std::size_t n = length();
    if (n == 0) fail_invalid("Trajectory: empty");
    if (observations.size() != n || actions.size() != n || log_probs.size() != n ||
        com_positions.size() != n || raw_rewards.size() != n)
      fail_invalid("Trajectory: sequence lengths disagree (", observations.size(), "/", actions.size(), "/", n,
                   "/", raw_rewards.size(), "/", log_probs.size(), "/", com_positions.size(), ")");
    if (latent < 0 || latent >= latent_count)
      fail_invalid("Trajectory: latent ", latent, " outside [0,", latent_count, ")");
  }
};

struct TrajectoryBatch {
  std::vector<Trajectory> trajectories;
  int latent_count = 1;

  std::size_t total_steps() const {
    std::size_t n = 0;
    for (const auto& t : trajectories) n += t.length();
    return n;
  }

  void validate() const {
    for (const auto& t : trajectories) t.validate(latent_count);
  }
};

}  // namespace skillrl

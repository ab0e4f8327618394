#pragma once

#include <span>

#include "skillrl/core/observation.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/envs/robot.hpp"

namespace skillrl {

struct StepResult {
  FactoredObservation obs;
  double reward = 0.0;
  bool done = false;
};

// Agent-space block shared by every environment: (vx, vy, heading).
// Position is deliberately excluded so skills cannot key on absolute location.
inline FactoredObservation agent_observation(const PointRobotState& s) {
  return FactoredObservation{{s.velocity.x, s.velocity.y, s.heading}, {}};
}

inline constexpr int kAgentDim = 3;

// Free arena with the speed-norm proxy reward. Never terminates.
class PretrainEnv {
 public:
  explicit PretrainEnv(DynamicsConfig dyn = {}) : dyn_(dyn) {}

  FactoredObservation reset(RngStream&) {
    state_ = PointRobotState{};  // origin, at rest, heading 0, always
    return agent_observation(state_);
  }

  StepResult step(std::span<const double> action) {
    const double speed = integrate_free(state_, action, dyn_);
    return {agent_observation(state_), speed, false};
  }

  const PointRobotState& state() const { return state_; }
  Vec2 com() const { return state_.position; }
  const DynamicsConfig& dynamics() const { return dyn_; }
  int obs_dim() const { return kAgentDim; }
  int agent_dim() const { return kAgentDim; }

 private:
  DynamicsConfig dyn_;
  PointRobotState state_;
};

}  // namespace skillrl

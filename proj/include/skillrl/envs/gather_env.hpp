#pragma once

#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/observation.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/envs/pretrain_env.hpp"
#include "skillrl/envs/robot.hpp"
#include "skillrl/envs/sensors.hpp"

namespace skillrl {

struct GatherSpec {
  double arena_half_size = 6.0;
  int n_green = 4;
  int n_red = 4;
  double ball_radius = 0.4;
  double min_spawn_dist = 1.0;
  double robot_radius = 0.2;

  bool operator==(const GatherSpec&) const = default;

  void validate() const {
    if (n_green < 1 || n_red < 1) fail_invalid("GatherSpec: need n_green, n_red >= 1, got ", n_green, "/", n_red);
    if (!(arena_half_size > 0.0) || !(ball_radius > 0.0))
      fail_invalid("GatherSpec: arena_half_size and ball_radius must be positive");
  }
};

struct Ball {
  Vec2 position;
  bool green = true;
};

// Ball-collection arena: +1 per green ball, -1 per red, boundary walls,
// done when every green ball is consumed. Ball layout is drawn from the
// reset stream with rejection sampling honoring min_spawn_dist.
// obs.rest = green-ray, red-ray, then boundary-wall-ray readings.
class GatherEnv {
 public:
  explicit GatherEnv(GatherSpec spec = {}, SensorConfig sensors = {}, DynamicsConfig dyn = {})
      : spec_(spec), sensors_(sensors), dyn_(dyn) {
    spec_.validate();
    sensors_.validate();
    const double h = spec_.arena_half_size;
    walls_ = rectangle_walls({-h, -h}, {h, h});
  }

  FactoredObservation reset(RngStream& rng) {
    state_ = PointRobotState{};  // robot centered
    balls_.clear();
    const double margin = spec_.ball_radius;
    const double lo = -spec_.arena_half_size + margin;
    const double hi = spec_.arena_half_size - margin;
    for (int i = 0; i < spec_.n_green + spec_.n_red; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
        const Vec2 p{rng.uniform(lo, hi), rng.uniform(lo, hi)};
        if ((p - state_.position).norm() < spec_.min_spawn_dist) continue;
        bool overlaps = false;
        for (const auto& b : balls_)
          if ((p - b.position).norm() < 2.0 * spec_.ball_radius) overlaps = true;
        if (overlaps) continue;
        balls_.push_back({p, i < spec_.n_green});
        placed = true;
      }
      if (!placed)
        fail_runtime("GatherEnv::reset: failed to place ball ", i, " after 1000 rejection samples",
                     " (arena_half_size=", spec_.arena_half_size, ", min_spawn_dist=", spec_.min_spawn_dist, ")");
    }
    return observe();
  }

  StepResult step(std::span<const double> action) {
    integrate_walls(state_, action, dyn_, walls_);
    double reward = 0.0;
    const double consume = spec_.ball_radius + spec_.robot_radius;
    for (std::size_t i = balls_.size(); i-- > 0;) {
      if ((balls_[i].position - state_.position).norm() <= consume) {
        reward += balls_[i].green ? 1.0 : -1.0;
        balls_.erase(balls_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    bool any_green = false;
    for (const auto& b : balls_) any_green |= b.green;
    return {observe(), reward, !any_green};
  }

  FactoredObservation observe() const {
    FactoredObservation obs = agent_observation(state_);
    std::vector<Vec2> greens, reds;
    for (const auto& b : balls_) (b.green ? greens : reds).push_back(b.position);
    auto green_rays =
        circle_readings(sensors_, state_.position, state_.heading, greens, spec_.ball_radius, walls_);
    auto red_rays = circle_readings(sensors_, state_.position, state_.heading, reds, spec_.ball_radius, walls_);
    auto wall_rays = wall_readings(sensors_, state_.position, state_.heading, walls_);
    obs.rest.reserve(static_cast<std::size_t>(3 * sensors_.n_rays));
    obs.rest.insert(obs.rest.end(), green_rays.begin(), green_rays.end());
    obs.rest.insert(obs.rest.end(), red_rays.begin(), red_rays.end());
    obs.rest.insert(obs.rest.end(), wall_rays.begin(), wall_rays.end());
    return obs;
  }

  const PointRobotState& state() const { return state_; }
  Vec2 com() const { return state_.position; }
  const std::vector<Ball>& balls() const { return balls_; }
  std::vector<Ball>& balls() { return balls_; }
  const GatherSpec& spec() const { return spec_; }
  const DynamicsConfig& dynamics() const { return dyn_; }
  int obs_dim() const { return kAgentDim + 3 * sensors_.n_rays; }
  int agent_dim() const { return kAgentDim; }

 private:
  GatherSpec spec_;
  SensorConfig sensors_;
  DynamicsConfig dyn_;
  std::vector<WallSegment> walls_;
  PointRobotState state_;
  std::vector<Ball> balls_;
};

}  // namespace skillrl

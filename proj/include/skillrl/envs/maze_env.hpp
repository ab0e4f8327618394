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

struct MazeSpec {
  std::vector<WallSegment> walls;
  Vec2 start;
  Vec2 goal;
  double goal_radius = 0.4;
  int id = 0;
};

// Desk-scale mazes: arm length 4, corridor width 2.
// Maze 0 is a U-turn solved forward-left-left; maze 1 is its reflection
// about x = 0 (backwards-right-right). Mazes 2 and 3 share a ring corridor
// with the goal in the north-east or south-west corner.
inline MazeSpec maze_spec(int id) {
  MazeSpec spec;
  spec.id = id;
  switch (id) {
    case 0: {
      spec.walls = rectangle_walls({-1.0, -1.0}, {5.0, 5.0});
      const auto block = rectangle_walls({-1.0, 1.0}, {3.0, 3.0});
      spec.walls.insert(spec.walls.end(), block.begin(), block.end());
      spec.start = {0.0, 0.0};
      spec.goal = {0.0, 4.0};
      break;
    }
    case 1: {
      spec.walls = rectangle_walls({-5.0, -1.0}, {1.0, 5.0});
      const auto block = rectangle_walls({-3.0, 1.0}, {1.0, 3.0});
      spec.walls.insert(spec.walls.end(), block.begin(), block.end());
      spec.start = {0.0, 0.0};
      spec.goal = {0.0, 4.0};
      break;
    }
    case 2:
    case 3: {
      spec.walls = rectangle_walls({-5.0, -5.0}, {5.0, 5.0});
      const auto block = rectangle_walls({-3.0, -3.0}, {3.0, 3.0});
      spec.walls.insert(spec.walls.end(), block.begin(), block.end());
      spec.start = {0.0, -4.0};
      spec.goal = (id == 2) ? Vec2{4.0, 4.0} : Vec2{-4.0, -4.0};
      break;
    }
    default:
      fail_invalid("maze_spec: id ", id, " outside {0,1,2,3}");
  }
  return spec;
}

// Sparse-reward maze: reward 1 and termination only on reaching the goal disc.
// obs.rest = wall-ray readings followed by goal-ray readings.
class MazeEnv {
 public:
  explicit MazeEnv(MazeSpec spec, SensorConfig sensors = {}, DynamicsConfig dyn = {})
      : spec_(std::move(spec)), sensors_(sensors), dyn_(dyn) {
    sensors_.validate();
  }

  FactoredObservation reset(RngStream&) {
    state_ = PointRobotState{};
    state_.position = spec_.start;
    return observe();
  }

  StepResult step(std::span<const double> action) {
    integrate_walls(state_, action, dyn_, spec_.walls);
    const bool reached = (state_.position - spec_.goal).norm() <= spec_.goal_radius;
    return {observe(), reached ? 1.0 : 0.0, reached};
  }

  FactoredObservation observe() const {
    FactoredObservation obs = agent_observation(state_);
    obs.rest = wall_readings(sensors_, state_.position, state_.heading, spec_.walls);
    const Vec2 goal[] = {spec_.goal};
    const auto goal_rays =
        circle_readings(sensors_, state_.position, state_.heading, goal, spec_.goal_radius, spec_.walls);
    obs.rest.insert(obs.rest.end(), goal_rays.begin(), goal_rays.end());
    return obs;
  }

  const PointRobotState& state() const { return state_; }
  void set_state(const PointRobotState& s) { state_ = s; }
  Vec2 com() const { return state_.position; }
  const MazeSpec& spec() const { return spec_; }
  const DynamicsConfig& dynamics() const { return dyn_; }
  int obs_dim() const { return kAgentDim + 2 * sensors_.n_rays; }
  int agent_dim() const { return kAgentDim; }

 private:
  MazeSpec spec_;
  SensorConfig sensors_;
  DynamicsConfig dyn_;
  PointRobotState state_;
};

}  // namespace skillrl

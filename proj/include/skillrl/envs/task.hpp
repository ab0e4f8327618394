#pragma once

#include <string>
#include <variant>

#include "skillrl/core/errors.hpp"
#include "skillrl/envs/gather_env.hpp"
#include "skillrl/envs/maze_env.hpp"
#include "skillrl/envs/pretrain_env.hpp"

namespace skillrl {

enum class TaskId { kPretrain, kMaze0, kMaze1, kMaze2, kMaze3, kGather };

inline std::string task_name(TaskId t) {
  switch (t) {
    case TaskId::kPretrain: return "pretrain";
    case TaskId::kMaze0: return "maze0";
    case TaskId::kMaze1: return "maze1";
    case TaskId::kMaze2: return "maze2";
    case TaskId::kMaze3: return "maze3";
    case TaskId::kGather: return "gather";
  }
  fail_invalid("task_name: bad TaskId");
}

inline TaskId task_from_name(const std::string& s) {
  for (TaskId t : {TaskId::kPretrain, TaskId::kMaze0, TaskId::kMaze1, TaskId::kMaze2, TaskId::kMaze3, TaskId::kGather})
    if (task_name(t) == s) return t;
  fail_invalid("unknown task '", s, "' (expected pretrain|maze0|maze1|maze2|maze3|gather)");
}

using TaskEnv = std::variant<PretrainEnv, MazeEnv, GatherEnv>;

inline TaskEnv make_task_env(TaskId task, DynamicsConfig dyn = {}, SensorConfig sensors = {},
                             GatherSpec gather = {}) {
  switch (task) {
    case TaskId::kPretrain: return PretrainEnv(dyn);
    case TaskId::kMaze0: return MazeEnv(maze_spec(0), sensors, dyn);
    case TaskId::kMaze1: return MazeEnv(maze_spec(1), sensors, dyn);
    case TaskId::kMaze2: return MazeEnv(maze_spec(2), sensors, dyn);
    case TaskId::kMaze3: return MazeEnv(maze_spec(3), sensors, dyn);
    case TaskId::kGather: return GatherEnv(gather, sensors, dyn);
  }
  fail_invalid("make_task_env: bad TaskId");
}

inline FactoredObservation env_reset(TaskEnv& env, RngStream& rng) {
  return std::visit([&](auto& e) { return e.reset(rng); }, env);
}
inline StepResult env_step(TaskEnv& env, std::span<const double> action) {
  return std::visit([&](auto& e) { return e.step(action); }, env);
}
inline Vec2 env_com(const TaskEnv& env) {
  return std::visit([](const auto& e) { return e.com(); }, env);
}
inline double env_speed(const TaskEnv& env) {
  return std::visit([](const auto& e) { return e.state().velocity.norm(); }, env);
}
inline int env_obs_dim(const TaskEnv& env) {
  return std::visit([](const auto& e) { return e.obs_dim(); }, env);
}
inline int env_agent_dim(const TaskEnv& env) {
  return std::visit([](const auto& e) { return e.agent_dim(); }, env);
}

}  // namespace skillrl

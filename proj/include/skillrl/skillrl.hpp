#pragma once

#include "skillrl/analysis/coverage.hpp"
#include "skillrl/analysis/diversity.hpp"
#include "skillrl/analysis/learning_curve.hpp"
#include "skillrl/analysis/svg.hpp"
#include "skillrl/analysis/visitation.hpp"
#include "skillrl/core/errors.hpp"
#include "skillrl/core/observation.hpp"
#include "skillrl/core/param_vector.hpp"
#include "skillrl/core/returns.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/core/trajectory.hpp"
#include "skillrl/core/vec2.hpp"
#include "skillrl/envs/gather_env.hpp"
#include "skillrl/envs/geometry.hpp"
#include "skillrl/envs/maze_env.hpp"
#include "skillrl/envs/pretrain_env.hpp"
#include "skillrl/envs/robot.hpp"
#include "skillrl/envs/sensors.hpp"
#include "skillrl/envs/task.hpp"
#include "skillrl/io/csv.hpp"
#include "skillrl/mi/visitation_grid.hpp"
#include "skillrl/policy/categorical.hpp"
#include "skillrl/policy/checkpoint.hpp"
#include "skillrl/policy/gaussian.hpp"
#include "skillrl/policy/manager_policy.hpp"
#include "skillrl/policy/mlp.hpp"
#include "skillrl/policy/snn_policy.hpp"
#include "skillrl/training/flat_training.hpp"
#include "skillrl/training/hierarchy.hpp"
#include "skillrl/training/pretrain.hpp"
#include "skillrl/training/rollout.hpp"
#include "skillrl/trpo/baseline.hpp"
#include "skillrl/trpo/cg.hpp"
#include "skillrl/trpo/problems.hpp"
#include "skillrl/trpo/trpo.hpp"

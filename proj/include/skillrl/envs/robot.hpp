#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/vec2.hpp"
#include "skillrl/envs/geometry.hpp"

namespace skillrl {

// Damped point-robot dynamics shared by every task:
//   v' = clamp_norm((1 - damping) * v + gain * clip(a), v_max)
//   p' = p + v'
struct DynamicsConfig {
  double damping = 0.1;
  double gain = 0.006;
  double v_max = 0.05;

  bool operator==(const DynamicsConfig&) const = default;
};

struct PointRobotState {
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;
};

inline constexpr double kContactEpsilon = 1e-6;

inline Vec2 clip_action(std::span<const double> action) {
  if (action.size() != 2) fail_invalid("action must have 2 components, got ", action.size());
  if (!std::isfinite(action[0]) || !std::isfinite(action[1]))
    fail_invalid("non-finite action (", action[0], ",", action[1], ")");
  return {std::clamp(action[0], -1.0, 1.0), std::clamp(action[1], -1.0, 1.0)};
}

inline Vec2 updated_velocity(Vec2 velocity, Vec2 clipped_action, const DynamicsConfig& cfg) {
  Vec2 v = velocity * (1.0 - cfg.damping) + clipped_action * cfg.gain;
  const double speed = v.norm();
  if (speed > cfg.v_max) v = v * (cfg.v_max / speed);
  return v;
}

inline void update_heading(PointRobotState& s) {
  if (s.velocity.norm2() > 1e-24) s.heading = std::atan2(s.velocity.y, s.velocity.x);
}

// Free-space step. Returns the new speed (the pre-training proxy reward).
inline double integrate_free(PointRobotState& s, std::span<const double> action, const DynamicsConfig& cfg) {
  s.velocity = updated_velocity(s.velocity, clip_action(action), cfg);
  s.position += s.velocity;
  update_heading(s);
  return s.velocity.norm();
}

// Step against walls: sweep to the earliest contact, back off by the contact
// epsilon, zero the velocity component into the wall, and slide the unused
// displacement along the wall. Corners resolve within a few passes.
inline void integrate_walls(PointRobotState& s, std::span<const double> action, const DynamicsConfig& cfg,
                            std::span<const WallSegment> walls) {
  s.velocity = updated_velocity(s.velocity, clip_action(action), cfg);
  Vec2 remaining = s.velocity;
  for (int pass = 0; pass < 3; ++pass) {
    if (remaining.norm() < 1e-15) break;
    const auto hit = sweep_first_hit(s.position, remaining, walls);
    if (!hit) {
      s.position += remaining;
      break;
    }
    // advance to the contact, then retreat by the contact epsilon along the
    // wall normal so clearance holds at any approach angle
    const Vec2 n = hit->normal;
    s.position += remaining * hit->t + n * kContactEpsilon;
    const Vec2 rest = remaining * (1.0 - hit->t);
    remaining = rest - n * n.dot(rest);
    s.velocity = s.velocity - n * n.dot(s.velocity);
  }
  update_heading(s);
}

}  // namespace skillrl

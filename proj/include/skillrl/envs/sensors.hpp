#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/envs/geometry.hpp"

namespace skillrl {

// Ray banks are body-framed: ray i points at heading + 2*pi*i/n_rays.
// A reading is (max_range - hit_distance) / max_range in [0,1]; 0 when
// nothing is within range.
struct SensorConfig {
  int n_rays = 8;
  double max_range = 4.0;

  bool operator==(const SensorConfig&) const = default;

  void validate() const {
    if (n_rays < 1) fail_invalid("SensorConfig: n_rays ", n_rays, " must be >= 1");
    if (!(max_range > 0.0)) fail_invalid("SensorConfig: max_range ", max_range, " must be positive");
  }
};

inline double ray_angle(const SensorConfig& cfg, double heading, int i) {
  return heading + 2.0 * std::numbers::pi * static_cast<double>(i) / cfg.n_rays;
}

inline double reading_from_distance(double dist, double max_range) {
  if (dist >= max_range) return 0.0;
  return (max_range - dist) / max_range;
}

inline std::vector<double> wall_readings(const SensorConfig& cfg, Vec2 origin, double heading,
                                         std::span<const WallSegment> walls) {
  std::vector<double> out(cfg.n_rays);
  for (int i = 0; i < cfg.n_rays; ++i)
    out[i] = reading_from_distance(raycast(origin, ray_angle(cfg, heading, i), walls, cfg.max_range), cfg.max_range);
  return out;
}

// Readings for circular targets (goal disc, balls), occluded by walls.
inline std::vector<double> circle_readings(const SensorConfig& cfg, Vec2 origin, double heading,
                                           std::span<const Vec2> centers, double radius,
                                           std::span<const WallSegment> occluders) {
  std::vector<double> out(cfg.n_rays);
  for (int i = 0; i < cfg.n_rays; ++i) {
    const double angle = ray_angle(cfg, heading, i);
    const double wall_d = raycast(origin, angle, occluders, cfg.max_range);
    double best = cfg.max_range;
    for (const auto& c : centers) {
      if (auto t = ray_circle_distance(origin, angle, c, radius); t && *t < best) best = *t;
    }
    if (best >= wall_d) best = cfg.max_range;  // a wall blocks the view
    out[i] = reading_from_distance(best, cfg.max_range);
  }
  return out;
}

}  // namespace skillrl

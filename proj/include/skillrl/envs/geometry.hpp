#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/vec2.hpp"

namespace skillrl {

struct WallSegment {
  Vec2 a;
  Vec2 b;

  WallSegment(Vec2 a_, Vec2 b_) : a(a_), b(b_) {
    if (a == b) fail_invalid("WallSegment: degenerate segment at (", a.x, ",", a.y, ")");
  }

  Vec2 direction() const { return b - a; }
  // Unit normal; sign is fixed up by callers against the motion direction.
  Vec2 normal() const {
    const Vec2 d = direction();
    const double n = d.norm();
    return {-d.y / n, d.x / n};
  }
};

// Distance along the ray (origin, angle) to the segment, if it intersects.
inline std::optional<double> ray_segment_distance(Vec2 origin, double angle, const WallSegment& seg) {
  const Vec2 d{std::cos(angle), std::sin(angle)};
  const Vec2 e = seg.direction();
  const double denom = d.cross(e);
  if (std::abs(denom) < 1e-14) return std::nullopt;  // parallel
  const Vec2 ao = seg.a - origin;
  const double t = ao.cross(e) / denom;  // along the ray
  const double s = ao.cross(d) / denom;  // along the segment
  if (t < 0.0 || s < -1e-12 || s > 1.0 + 1e-12) return std::nullopt;
  return t;
}

// Min ray-segment intersection distance over all segments, capped at max_range.
inline double raycast(Vec2 origin, double angle, std::span<const WallSegment> segments, double max_range) {
  if (!(max_range > 0.0)) fail_invalid("raycast: max_range ", max_range, " must be positive");
  double best = max_range;
  for (const auto& seg : segments) {
    if (auto t = ray_segment_distance(origin, angle, seg); t && *t < best) best = *t;
  }
  return best;
}

// Distance along the ray to a circle boundary (nearest intersection), if any.
inline std::optional<double> ray_circle_distance(Vec2 origin, double angle, Vec2 center, double radius) {
  const Vec2 d{std::cos(angle), std::sin(angle)};
  const Vec2 oc = origin - center;
  const double b = 2.0 * d.dot(oc);
  const double c = oc.norm2() - radius * radius;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double t0 = (-b - sq) / 2.0;
  const double t1 = (-b + sq) / 2.0;
  if (t0 >= 0.0) return t0;
  if (t1 >= 0.0) return 0.0;  // origin inside the circle
  return std::nullopt;
}

struct SweepHit {
  double t = 0.0;   // fraction of the displacement at which contact occurs
  Vec2 normal;      // unit wall normal, oriented against the motion
  int wall = -1;
};

// Earliest contact of the moving point (from, from + disp) with any segment.
inline std::optional<SweepHit> sweep_first_hit(Vec2 from, Vec2 disp, std::span<const WallSegment> segments) {
  const double len = disp.norm();
  if (len == 0.0) return std::nullopt;
  std::optional<SweepHit> best;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    const Vec2 e = seg.direction();
    const double denom = disp.cross(e);
    if (std::abs(denom) < 1e-16) continue;
    const Vec2 ao = seg.a - from;
    const double t = ao.cross(e) / denom;
    const double s = ao.cross(disp) / denom;
    if (t < -1e-12 || t > 1.0 || s < -1e-9 || s > 1.0 + 1e-9) continue;
    if (!best || t < best->t) {
      Vec2 n = seg.normal();
      if (n.dot(disp) > 0.0) n = n * -1.0;
      best = SweepHit{std::max(t, 0.0), n, static_cast<int>(i)};
    }
  }
  return best;
}

// Proper or touching intersection of segments (p1,p2) and (q1,q2).
// Used by the collision-safety checks.
inline bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const Vec2 r = p2 - p1;
  const Vec2 s = q2 - q1;
  const double denom = r.cross(s);
  const Vec2 pq = q1 - p1;
  if (std::abs(denom) < 1e-16) {
    if (std::abs(pq.cross(r)) > 1e-12) return false;  // parallel, not collinear
    // collinear: check 1d overlap along r
    const double rr = r.norm2();
    if (rr == 0.0) return false;
    const double t0 = pq.dot(r) / rr;
    const double t1 = (q2 - p1).dot(r) / rr;
    return std::max(std::min(t0, t1), 0.0) <= std::min(std::max(t0, t1), 1.0);
  }
  const double t = pq.cross(s) / denom;
  const double u = pq.cross(r) / denom;
  return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
}

inline std::vector<WallSegment> rectangle_walls(Vec2 lo, Vec2 hi) {
  return {WallSegment({lo.x, lo.y}, {hi.x, lo.y}), WallSegment({hi.x, lo.y}, {hi.x, hi.y}),
          WallSegment({hi.x, hi.y}, {lo.x, hi.y}), WallSegment({lo.x, hi.y}, {lo.x, lo.y})};
}

}  // namespace skillrl

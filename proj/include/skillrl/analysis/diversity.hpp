#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "skillrl/analysis/visitation.hpp"
#include "skillrl/core/errors.hpp"
#include "skillrl/core/vec2.hpp"

namespace skillrl {

struct SkillDiversityReport {
  std::vector<Vec2> mean_displacement;          // per latent, rollout-end displacement from origin
  std::vector<int> rollouts_per_latent;
  std::vector<std::vector<double>> angle_deg;   // pairwise separations, [0, 180]
  std::vector<int> excluded_latents;            // latents with no rollouts
  int distinct_count = 0;
  double min_norm = 0.0;

  void print(std::ostream& os) const {
    os << "distinct_skills " << distinct_count << "\n";
    os << "min_norm_threshold " << min_norm << "\n";
    for (std::size_t z = 0; z < mean_displacement.size(); ++z)
      os << "latent " << z << " rollouts " << rollouts_per_latent[z] << " mean_displacement "
         << mean_displacement[z].x << " " << mean_displacement[z].y << " norm " << mean_displacement[z].norm()
         << "\n";
    for (int z : excluded_latents) os << "latent " << z << " excluded (no rollouts)\n";
  }
};

// A latent counts toward diversity when its mean terminal displacement is
// long enough (a quarter of the straight-line reach, scaled by 0.3) and at
// least 45 degrees away from every other member of the chosen subset. The
// report carries the maximum mutually-distinct subset size, found exactly
// by subset enumeration (K <= 6).
inline double diversity_min_norm(double v_max, int horizon) { return 0.3 * (v_max * horizon * 0.25); }

inline SkillDiversityReport diversity_report(const std::vector<VisitationRecord>& records, int latent_count,
                                             double min_norm, double min_angle_deg = 45.0) {
  if (latent_count < 1) fail_invalid("diversity_report: latent_count must be >= 1");
  SkillDiversityReport report;
  report.min_norm = min_norm;
  report.mean_displacement.assign(static_cast<std::size_t>(latent_count), Vec2{});
  report.rollouts_per_latent.assign(static_cast<std::size_t>(latent_count), 0);

  // terminal record per (rollout, latent)
  std::vector<int> last_t;
  std::vector<Vec2> last_pos;
  std::vector<int> last_latent;
  for (const auto& r : records) {
    if (r.latent < 0 || r.latent >= latent_count)
      fail_invalid("diversity_report: latent ", r.latent, " outside [0,", latent_count, ")");
    if (r.rollout_id >= static_cast<int>(last_t.size())) {
      last_t.resize(static_cast<std::size_t>(r.rollout_id) + 1, -1);
      last_pos.resize(static_cast<std::size_t>(r.rollout_id) + 1);
      last_latent.resize(static_cast<std::size_t>(r.rollout_id) + 1, 0);
    }
    if (r.timestep >= last_t[static_cast<std::size_t>(r.rollout_id)]) {
      last_t[static_cast<std::size_t>(r.rollout_id)] = r.timestep;
      last_pos[static_cast<std::size_t>(r.rollout_id)] = {r.x, r.y};
      last_latent[static_cast<std::size_t>(r.rollout_id)] = r.latent;
    }
  }
  for (std::size_t i = 0; i < last_t.size(); ++i) {
    if (last_t[i] < 0) continue;
    report.mean_displacement[static_cast<std::size_t>(last_latent[i])] += last_pos[i];
    ++report.rollouts_per_latent[static_cast<std::size_t>(last_latent[i])];
  }
  for (int z = 0; z < latent_count; ++z) {
    if (report.rollouts_per_latent[z] == 0) {
      report.excluded_latents.push_back(z);
      continue;
    }
    report.mean_displacement[z] = report.mean_displacement[z] * (1.0 / report.rollouts_per_latent[z]);
  }

  report.angle_deg.assign(static_cast<std::size_t>(latent_count),
                          std::vector<double>(static_cast<std::size_t>(latent_count), 0.0));
  for (int a = 0; a < latent_count; ++a) {
    for (int b = 0; b < latent_count; ++b) {
      if (a == b) continue;
      const Vec2 va = report.mean_displacement[a], vb = report.mean_displacement[b];
      const double na = va.norm(), nb = vb.norm();
      if (na < 1e-12 || nb < 1e-12) continue;
      const double c = std::clamp(va.dot(vb) / (na * nb), -1.0, 1.0);
      report.angle_deg[a][b] = std::acos(c) * 180.0 / std::numbers::pi;
    }
  }

  int best = 0;
  for (unsigned mask = 1; mask < (1u << latent_count); ++mask) {
    bool ok = true;
    int size = 0;
    for (int a = 0; a < latent_count && ok; ++a) {
      if (!(mask & (1u << a))) continue;
      ++size;
      if (report.rollouts_per_latent[a] == 0 || report.mean_displacement[a].norm() < min_norm) {
        ok = false;
        break;
      }
      for (int b = a + 1; b < latent_count && ok; ++b)
        if ((mask & (1u << b)) && report.angle_deg[a][b] < min_angle_deg) ok = false;
    }
    if (ok) best = std::max(best, size);
  }
  report.distinct_count = best;
  return report;
}

}  // namespace skillrl

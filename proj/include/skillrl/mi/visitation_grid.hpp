#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/core/trajectory.hpp"
#include "skillrl/core/vec2.hpp"

namespace skillrl {

struct GridCell {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const GridCell&) const = default;
};

struct GridCellHash {
  std::size_t operator()(const GridCell& c) const {
    return static_cast<std::size_t>(
        detail::mix64(static_cast<std::uint64_t>(c.x) * 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(c.y)));
  }
};

// Cell containing a continuous CoM coordinate, by the floor convention:
// the boundary lands in the upper cell.
inline GridCell cell_of(Vec2 com, double mesh_density) {
  if (!com.finite()) fail_invalid("cell_of: non-finite CoM (", com.x, ",", com.y, ")");
  return {static_cast<std::int64_t>(std::floor(com.x * mesh_density)),
          static_cast<std::int64_t>(std::floor(com.y * mesh_density))};
}

struct MiConfig {
  double alpha_h = 0.01;
  double posterior_floor = 1e-3;

  void validate(int latent_count) const {
    if (!std::isfinite(alpha_h) || alpha_h < 0.0) fail_invalid("MiConfig: alpha_h ", alpha_h, " must be finite, >= 0");
    if (!(posterior_floor > 0.0) || !(posterior_floor < 1.0 / latent_count))
      fail_invalid("MiConfig: posterior_floor ", posterior_floor, " outside (0, 1/", latent_count, ")");
  }
};

// Visitation counts m_c(z) over discretized CoM cells. Rebuilt from scratch
// for every batch; the empirical posterior p(Z=z|c) is the count ratio.
class VisitationGrid {
 public:
  VisitationGrid(int latent_count, double mesh_density = 10.0)
      : latent_count_(latent_count), mesh_density_(mesh_density) {
    if (latent_count_ < 1) fail_invalid("VisitationGrid: latent_count ", latent_count_, " must be >= 1");
    if (!(mesh_density_ > 0.0)) fail_invalid("VisitationGrid: mesh_density ", mesh_density_, " must be positive");
  }

  // Fresh grid with one count per (timestep, rollout) pair of the batch.
  static VisitationGrid accumulate(const TrajectoryBatch& batch, double mesh_density = 10.0) {
    VisitationGrid grid(batch.latent_count, mesh_density);
    for (const auto& traj : batch.trajectories) {
      if (traj.latent < 0 || traj.latent >= batch.latent_count)
        fail_invalid("VisitationGrid: latent ", traj.latent, " outside [0,", batch.latent_count, ")");
      for (const auto& com : traj.com_positions) grid.add(com, traj.latent);
    }
    return grid;
  }

  void add(Vec2 com, int z) {
    auto& counts = counts_[cell_of(com, mesh_density_)];
    if (counts.empty()) counts.assign(static_cast<std::size_t>(latent_count_), 0);
    ++counts[static_cast<std::size_t>(z)];
    ++total_;
  }

  // Eq-2 count ratio with no flooring; 0 for an unvisited cell.
  double posterior_raw(GridCell cell, int z) const {
    const auto it = counts_.find(cell);
    if (it == counts_.end()) return 0.0;
    std::int64_t total = 0;
    for (auto c : it->second) total += c;
    if (total == 0) return 0.0;
    return static_cast<double>(it->second[static_cast<std::size_t>(z)]) / static_cast<double>(total);
  }

  // Floored posterior: unvisited cells and tiny ratios return the floor, so
  // the per-step penalty is bounded by alpha_h * log(floor).
  double posterior(GridCell cell, int z, double floor_value) const {
    return std::max(posterior_raw(cell, z), floor_value);
  }

  std::int64_t total_count() const { return total_; }
  int latent_count() const { return latent_count_; }
  double mesh_density() const { return mesh_density_; }
  std::size_t cells_visited() const { return counts_.size(); }
  const std::unordered_map<GridCell, std::vector<std::int64_t>, GridCellHash>& counts() const { return counts_; }

  // cell_x, cell_y, count_z0..count_z{K-1}
  void to_csv(std::ostream& os) const {
    os << "cell_x,cell_y";
    for (int z = 0; z < latent_count_; ++z) os << ",count_z" << z;
    os << "\n";
    for (const auto& [cell, counts] : counts_) {
      os << cell.x << "," << cell.y;
      for (auto c : counts) os << "," << c;
      os << "\n";
    }
  }

 private:
  int latent_count_;
  double mesh_density_;
  std::unordered_map<GridCell, std::vector<std::int64_t>, GridCellHash> counts_;
  std::int64_t total_ = 0;
};

// Eq-1 reward modification: R <- R + alpha_h * log p(Z=z|c), applied per
// timestep from the grid built on this same batch. Raw environment rewards
// stay in raw_rewards for logging.
inline void apply_mi_bonus(TrajectoryBatch& batch, const VisitationGrid& grid, const MiConfig& config) {
  config.validate(batch.latent_count);
  for (auto& traj : batch.trajectories) {
    if (traj.raw_rewards.size() != traj.rewards.size()) traj.raw_rewards = traj.rewards;
    for (std::size_t t = 0; t < traj.rewards.size(); ++t) {
      const double p =
          grid.posterior(cell_of(traj.com_positions[t], grid.mesh_density()), traj.latent, config.posterior_floor);
      traj.rewards[t] = traj.raw_rewards[t] + config.alpha_h * std::log(p);
    }
  }
}

}  // namespace skillrl

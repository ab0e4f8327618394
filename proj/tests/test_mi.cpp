#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "skillrl/mi/visitation_grid.hpp"

using namespace skillrl;

namespace {

Trajectory synth_traj(int latent, std::vector<Vec2> coms, double reward = 1.0) {
  Trajectory t;
  t.latent = latent;
  const std::size_t n = coms.size();
  t.com_positions = std::move(coms);
  t.rewards.assign(n, reward);
  t.raw_rewards = t.rewards;
  t.log_probs.assign(n, -1.0);
  t.observations.assign(n, FactoredObservation{{0.0}, {}});
  t.actions.assign(n, std::vector<double>{0.0});
  return t;
}

}  // namespace

TEST_CASE("cell_of floor convention") {
  CHECK(cell_of({0.23, -0.07}, 10.0) == GridCell{2, -1});
  CHECK(cell_of({0.0, 0.0}, 10.0) == GridCell{0, 0});
  CHECK(cell_of({1.0, 1.0}, 10.0) == GridCell{10, 10});  // boundary lands in the upper cell
  CHECK_THROWS_AS(cell_of({std::nan(""), 0.0}, 10.0), InvalidArgument);
}

TEST_CASE("accumulate tallies per-cell, per-latent visit counts") {
  TrajectoryBatch batch;
  batch.latent_count = 6;
  batch.trajectories.push_back(synth_traj(2, std::vector<Vec2>(5, Vec2{0.05, 0.05})));
  const auto grid = VisitationGrid::accumulate(batch, 10.0);
  CHECK(grid.total_count() == 5);
  CHECK(grid.cells_visited() == 1);
  const auto& counts = grid.counts().at(GridCell{0, 0});
  CHECK(counts == std::vector<std::int64_t>{0, 0, 5, 0, 0, 0});

  TrajectoryBatch empty;
  empty.latent_count = 6;
  const auto empty_grid = VisitationGrid::accumulate(empty, 10.0);
  CHECK(empty_grid.total_count() == 0);
  CHECK(empty_grid.cells_visited() == 0);

  TrajectoryBatch two;
  two.latent_count = 6;
  two.trajectories.push_back(synth_traj(0, std::vector<Vec2>(3, Vec2{0.01, 0.01})));
  two.trajectories.push_back(synth_traj(1, std::vector<Vec2>(1, Vec2{0.02, 0.09})));
  const auto g2 = VisitationGrid::accumulate(two, 10.0);
  CHECK(g2.counts().at(GridCell{0, 0}) == std::vector<std::int64_t>{3, 1, 0, 0, 0, 0});

  TrajectoryBatch bad;
  bad.latent_count = 2;
  bad.trajectories.push_back(synth_traj(5, {{0.0, 0.0}}));
  CHECK_THROWS_AS(VisitationGrid::accumulate(bad, 10.0), InvalidArgument);
}

TEST_CASE("posterior: direct ratio, degenerate, and floor branch") {
  VisitationGrid grid(2, 10.0);
  for (int i = 0; i < 3; ++i) grid.add({0.0, 0.0}, 0);
  grid.add({0.0, 0.0}, 1);
  CHECK(grid.posterior_raw({0, 0}, 0) == 0.75);
  CHECK(grid.posterior({0, 0}, 0, 1e-3) == 0.75);

  VisitationGrid solo(2, 10.0);
  solo.add({0.5, 0.5}, 1);
  CHECK(solo.posterior({5, 5}, 1, 1e-3) == 1.0);

  VisitationGrid floor_grid(2, 10.0);
  for (int i = 0; i < 4; ++i) floor_grid.add({0.0, 0.0}, 1);
  CHECK(floor_grid.posterior({0, 0}, 0, 1e-3) == 1e-3);
  CHECK(floor_grid.posterior({9, 9}, 0, 1e-3) == 1e-3);  // unvisited cell
}

TEST_CASE("posterior sums: raw sums to 1, floored within [1, 1 + K*floor]") {
  RngStream rng(61, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + rng.uniform_int(5);
    TrajectoryBatch batch;
    batch.latent_count = k;
    const int rollouts = 1 + rng.uniform_int(20);
    for (int r = 0; r < rollouts; ++r) {
      std::vector<Vec2> coms;
      const int len = 1 + rng.uniform_int(30);
      for (int t = 0; t < len; ++t) coms.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
      batch.trajectories.push_back(synth_traj(rng.uniform_int(k), std::move(coms)));
    }
    const auto grid = VisitationGrid::accumulate(batch, 10.0);
    const double floor_value = 1e-3;
    for (const auto& [cell, counts] : grid.counts()) {
      double raw_sum = 0.0, floored_sum = 0.0;
      for (int z = 0; z < k; ++z) {
        raw_sum += grid.posterior_raw(cell, z);
        floored_sum += grid.posterior(cell, z, floor_value);
      }
      CHECK(raw_sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(floored_sum >= 1.0 - 1e-12);
      CHECK(floored_sum <= 1.0 + k * floor_value + 1e-12);
    }
  }
}

TEST_CASE("posterior equals integer brute-force recount on random batches") {
  RngStream rng(67, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + rng.uniform_int(5);
    TrajectoryBatch batch;
    batch.latent_count = k;
    const int rollouts = 1 + rng.uniform_int(20);
    for (int r = 0; r < rollouts; ++r) {
      std::vector<Vec2> coms;
      const int len = 1 + rng.uniform_int(25);
      for (int t = 0; t < len; ++t) coms.push_back({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
      batch.trajectories.push_back(synth_traj(rng.uniform_int(k), std::move(coms)));
    }
    const auto grid = VisitationGrid::accumulate(batch, 10.0);

    // brute force over raw timesteps with integer arithmetic
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>> recount;
    for (const auto& traj : batch.trajectories)
      for (const auto& com : traj.com_positions) {
        const auto cell = cell_of(com, 10.0);
        auto& c = recount[{cell.x, cell.y}];
        if (c.empty()) c.assign(static_cast<std::size_t>(k), 0);
        ++c[static_cast<std::size_t>(traj.latent)];
      }
    for (const auto& [key, counts] : recount) {
      std::int64_t total = 0;
      for (auto c : counts) total += c;
      for (int z = 0; z < k; ++z) {
        const double expected =
            static_cast<double>(counts[static_cast<std::size_t>(z)]) / static_cast<double>(total);
        REQUIRE(grid.posterior_raw({key.first, key.second}, z) == expected);  // bitwise: same integer division
      }
    }
  }
}

TEST_CASE("apply_mi_bonus: direct substitution and alpha=0 bitwise identity") {
  TrajectoryBatch batch;
  batch.latent_count = 2;
  batch.trajectories.push_back(synth_traj(0, {{0.05, 0.05}}, 1.0));
  batch.trajectories.push_back(synth_traj(1, {{0.05, 0.05}}, 1.0));
  const auto grid = VisitationGrid::accumulate(batch, 10.0);

  auto modified = batch;
  apply_mi_bonus(modified, grid, MiConfig{0.01, 1e-3});
  CHECK(modified.trajectories[0].rewards[0] == doctest::Approx(1.0 + 0.01 * std::log(0.5)).epsilon(1e-12));
  CHECK(modified.trajectories[0].rewards[0] == doctest::Approx(0.9930685).epsilon(1e-7));
  CHECK(modified.trajectories[0].raw_rewards[0] == 1.0);

  auto zero_alpha = batch;
  apply_mi_bonus(zero_alpha, grid, MiConfig{0.0, 1e-3});
  for (std::size_t i = 0; i < batch.trajectories.size(); ++i)
    CHECK(zero_alpha.trajectories[i].rewards == batch.trajectories[i].rewards);
}

TEST_CASE("single-latent batch: posterior 1 everywhere visited, zero bonus") {
  TrajectoryBatch batch;
  batch.latent_count = 6;
  RngStream rng(71, 3);
  for (int r = 0; r < 4; ++r) {
    std::vector<Vec2> coms;
    for (int t = 0; t < 10; ++t) coms.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    batch.trajectories.push_back(synth_traj(3, std::move(coms), 0.25));
  }
  const auto grid = VisitationGrid::accumulate(batch, 10.0);
  auto modified = batch;
  apply_mi_bonus(modified, grid, MiConfig{0.5, 1e-3});
  for (std::size_t i = 0; i < batch.trajectories.size(); ++i)
    for (std::size_t t = 0; t < batch.trajectories[i].rewards.size(); ++t)
      CHECK(modified.trajectories[i].rewards[t] == batch.trajectories[i].rewards[t]);
}

TEST_CASE("MI bonus is non-positive") {
  RngStream rng(73, 4);
  TrajectoryBatch batch;
  batch.latent_count = 3;
  for (int r = 0; r < 10; ++r) {
    std::vector<Vec2> coms;
    for (int t = 0; t < 20; ++t) coms.push_back({rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)});
    batch.trajectories.push_back(synth_traj(rng.uniform_int(3), std::move(coms), rng.uniform(-1, 1)));
  }
  const auto grid = VisitationGrid::accumulate(batch, 10.0);
  auto modified = batch;
  apply_mi_bonus(modified, grid, MiConfig{0.1, 1e-3});
  for (std::size_t i = 0; i < batch.trajectories.size(); ++i)
    for (std::size_t t = 0; t < batch.trajectories[i].rewards.size(); ++t)
      CHECK(modified.trajectories[i].rewards[t] <= batch.trajectories[i].raw_rewards[t]);
}

TEST_CASE("disjoint latents get zero penalty; fully overlapping uniform batch gets log(1/K)") {
  const int k = 4;
  TrajectoryBatch disjoint;
  disjoint.latent_count = k;
  for (int z = 0; z < k; ++z)
    disjoint.trajectories.push_back(
        synth_traj(z, std::vector<Vec2>(6, Vec2{static_cast<double>(z) + 0.05, 0.0}), 1.0));
  auto grid = VisitationGrid::accumulate(disjoint, 10.0);
  auto modified = disjoint;
  apply_mi_bonus(modified, grid, MiConfig{0.2, 1e-3});
  for (std::size_t i = 0; i < disjoint.trajectories.size(); ++i)
    CHECK(modified.trajectories[i].rewards == disjoint.trajectories[i].rewards);

  TrajectoryBatch overlap;
  overlap.latent_count = k;
  for (int z = 0; z < k; ++z)
    overlap.trajectories.push_back(synth_traj(z, std::vector<Vec2>(6, Vec2{0.05, 0.05}), 1.0));
  grid = VisitationGrid::accumulate(overlap, 10.0);
  auto modified2 = overlap;
  const double alpha = 0.2;
  apply_mi_bonus(modified2, grid, MiConfig{alpha, 1e-3});
  for (const auto& traj : modified2.trajectories)
    for (double r : traj.rewards)
      CHECK(r == doctest::Approx(1.0 + alpha * std::log(1.0 / k)).epsilon(1e-14));
}

TEST_CASE("grid counts reset per accumulate call and match batch timesteps") {
  TrajectoryBatch batch;
  batch.latent_count = 2;
  batch.trajectories.push_back(synth_traj(0, std::vector<Vec2>(7, Vec2{0.0, 0.0})));
  const auto g1 = VisitationGrid::accumulate(batch, 10.0);
  const auto g2 = VisitationGrid::accumulate(batch, 10.0);
  CHECK(g1.total_count() == 7);
  CHECK(g2.total_count() == 7);  // fresh grid, not doubled
  CHECK(static_cast<std::size_t>(g1.total_count()) == batch.total_steps());
}

TEST_CASE("grid CSV dump") {
  VisitationGrid grid(2, 10.0);
  grid.add({0.05, -0.05}, 1);
  std::ostringstream os;
  grid.to_csv(os);
  CHECK(os.str() == "cell_x,cell_y,count_z0,count_z1\n0,-1,0,1\n");
}

TEST_CASE("MiConfig validation") {
  const MiConfig negative_alpha{-0.1, 1e-3};
  CHECK_THROWS_AS(negative_alpha.validate(6), InvalidArgument);
  const MiConfig high_floor{0.1, 0.5};  // floor must be < 1/K
  CHECK_THROWS_AS(high_floor.validate(6), InvalidArgument);
  const MiConfig ok{0.1, 1e-3};
  CHECK_NOTHROW(ok.validate(6));
}

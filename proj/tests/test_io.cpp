#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "skillrl/envs/maze_env.hpp"
#include "skillrl/io/experiment_config.hpp"
#include "skillrl/io/progress.hpp"
#include "skillrl/policy/checkpoint.hpp"

using namespace skillrl;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("checkpoint: save -> load -> save is byte-identical") {
  SnnPolicy policy(3, 6, 2, Integration::kBilinear, {32, 32});
  RngStream init(59, streams::kPolicyInit);
  policy.init(init);
  const std::string p1 = "/tmp/skillrl_ckpt_a.bin";
  const std::string p2 = "/tmp/skillrl_ckpt_b.bin";
  save_policy(p1, policy);
  auto loaded = load_snn_policy(p1);
  CHECK(loaded.latent_count() == 6);
  CHECK(loaded.integration() == Integration::kBilinear);
  CHECK(loaded.obs_dim() == 3);
  CHECK(loaded.net().params().values() == policy.net().params().values());
  save_policy(p2, loaded);
  CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("checkpoint: kind and architecture mismatches are rejected with both descriptors") {
  ManagerPolicy manager(19, 6);
  RngStream init(61, streams::kPolicyInit);
  manager.init(init);
  const std::string path = "/tmp/skillrl_ckpt_manager.bin";
  save_policy(path, manager);
  CHECK_THROWS_AS(load_snn_policy(path), RuntimeFailure);
  const auto round = load_manager_policy(path);
  CHECK(round.params().values() == manager.params().values());

  CHECK_THROWS_AS(load_manager_policy("/tmp/skillrl_ckpt_missing.bin"), RuntimeFailure);

  // corrupt magic
  {
    std::ofstream os("/tmp/skillrl_ckpt_bad.bin", std::ios::binary);
    os << "NOTACKPT00000000";
  }
  CHECK_THROWS_AS(load_manager_policy("/tmp/skillrl_ckpt_bad.bin"), RuntimeFailure);
}

TEST_CASE("flat policy checkpoints round-trip") {
  FlatGaussianPolicy policy(19, 2, {32, 32});
  RngStream init(67, streams::kPolicyInit);
  policy.init(init);
  const std::string path = "/tmp/skillrl_ckpt_flat.bin";
  save_policy(path, policy);
  const auto loaded = load_flat_policy(path);
  CHECK(loaded.net().params().values() == policy.net().params().values());
  CHECK_THROWS_AS(load_snn_policy(path), RuntimeFailure);
}

TEST_CASE("config: serialize/parse round-trip preserves every field") {
  ExperimentConfig c;
  c.mode = "downstream";
  c.task = "maze2";
  c.latent_count = 4;
  c.integration = "concat";
  c.hidden = {16, 8};
  c.alpha_h = {0.0, 0.01, 0.1};
  c.mesh_density = 5.0;
  c.posterior_floor = 2e-3;
  c.trpo.step_kl = 0.02;
  c.trpo.batch_size = 2345;
  c.horizon = 123;
  c.n_iterations = 7;
  c.seeds = {1, 2, 3};
  c.switch_time = {10, 50};
  c.skill_mode = "multipolicy";
  c.skill_sources = {"/tmp/a.ckpt", "/tmp/b.ckpt"};
  c.baseline_mode = "com-proxy";
  c.dynamics.gain = 0.01;
  c.sensors.n_rays = 12;
  c.gather.n_green = 7;
  c.eval_episodes = 5;
  c.latent_mode = "random-manager";
  c.output_dir = "/tmp/out";

  const auto text = serialize_config(c);
  const auto parsed = parse_config(text);
  CHECK(parsed == c);
  CHECK(serialize_config(parsed) == text);
}

TEST_CASE("config: unknown keys and invalid fields are rejected by name") {
  ExperimentConfig c;
  auto j = to_json(c);
  j["trpo"]["stepkl"] = 0.5;
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("stepkl"), InvalidArgument);

  j = to_json(c);
  j["bogus_section"] = 1;
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("bogus_section"), InvalidArgument);

  j = to_json(c);
  j.erase("version");
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("version"), InvalidArgument);

  j = to_json(c);
  j["policy"]["integration"] = "outer";
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("integration"), InvalidArgument);

  CHECK_THROWS_AS(parse_config("not json"), InvalidArgument);
}

TEST_CASE("config presets") {
  ExperimentConfig c;
  c.mode = "pretrain";
  apply_preset(c, "paper-scale");
  CHECK(c.trpo.batch_size == 50000);
  CHECK(c.horizon == 500);
  CHECK(c.latent_count == 6);
  CHECK(c.mesh_density == 10.0);
  CHECK(c.hidden == std::vector<int>{32, 32});

  ExperimentConfig maze;
  maze.mode = "downstream";
  maze.task = "maze0";
  apply_preset(maze, "paper-scale");
  CHECK(maze.trpo.batch_size == 1000000);
  CHECK(maze.horizon == 10000);
  CHECK(maze.switch_time == std::vector<int>{500});

  ExperimentConfig gather;
  gather.mode = "downstream";
  gather.task = "gather";
  apply_preset(gather, "paper-scale");
  CHECK(gather.trpo.batch_size == 100000);
  CHECK(gather.horizon == 5000);
  CHECK(gather.switch_time == std::vector<int>{10});

  ExperimentConfig bench;
  bench.mode = "downstream";
  apply_preset(bench, "gather-benchmark");
  CHECK(bench.task == "gather");
  CHECK(bench.horizon == 500);
  CHECK(bench.trpo.batch_size == 50000);

  CHECK_THROWS_AS(apply_preset(bench, "warehouse-scale"), InvalidArgument);
}

TEST_CASE("progress CSV schema matches the aggregator's expectation") {
  std::ostringstream os;
  write_progress_header(os);
  CHECK(os.str() == "iteration,mean_return,surrogate,kl,step_norm,backtracks,residual\n");
  TrpoDiagnostics d;
  d.surrogate_after = 0.5;
  d.kl = 0.009;
  d.backtracks = 2;
  write_progress_row(os, 3, 1.25, d);
  std::istringstream is(os.str());
  const auto table = read_csv(is);
  CHECK(table.header == progress_schema());
  REQUIRE(table.rows.size() == 1);
  CHECK(csv_int(table.rows[0][0]) == 3);
  CHECK(csv_double(table.rows[0][1]) == 1.25);
  CHECK(csv_int(table.rows[0][5]) == 2);
}

TEST_CASE("golden maze trajectory trace") {
  // fixed action sequence through maze 0 with the fast example dynamics,
  // compared against the frozen trace
  MazeEnv env(maze_spec(0), {}, DynamicsConfig{0.1, 0.1, 0.5});
  RngStream rng(0, 0);
  env.reset(rng);
  std::ostringstream os;
  os << "t,x,y,vx,vy,heading\n";
  os.precision(17);
  RngStream action_rng(12345, 1);
  for (int t = 0; t < 200; ++t) {
    const double a[2] = {action_rng.uniform(-1.0, 1.0), action_rng.uniform(-1.0, 1.0)};
    env.step(a);
    const auto& s = env.state();
    os << t << "," << s.position.x << "," << s.position.y << "," << s.velocity.x << "," << s.velocity.y << ","
       << s.heading << "\n";
  }
  const std::string golden_path = std::string(SKILLRL_TEST_DATA_DIR) + "/maze0_golden.csv";
  std::ifstream golden(golden_path);
  if (!golden.good()) {
    // first run ever: write the trace so it can be frozen into the tree
    std::ofstream out(golden_path);
    out << os.str();
    FAIL("golden trace was missing; wrote ", golden_path, " - rerun to compare");
  }
  std::ostringstream expected;
  expected << golden.rdbuf();
  CHECK(os.str() == expected.str());
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "skillrl/envs/gather_env.hpp"
#include "skillrl/envs/maze_env.hpp"
#include "skillrl/envs/pretrain_env.hpp"
#include "skillrl/envs/task.hpp"

using namespace skillrl;

namespace {
// The spec's worked examples use these constants.
const DynamicsConfig kExampleDyn{0.1, 0.1, 0.5};
}  // namespace

TEST_CASE("pretrain_step fixed point and single substitution") {
  PretrainEnv env(kExampleDyn);
  RngStream rng(0, 0);
  auto obs = env.reset(rng);
  CHECK(obs.agent == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(obs.rest.empty());

  const double zero[2] = {0.0, 0.0};
  auto r0 = env.step(zero);
  CHECK(r0.reward == 0.0);
  CHECK(env.state().velocity == Vec2{0.0, 0.0});
  CHECK(env.state().position == Vec2{0.0, 0.0});

  const double push[2] = {1.0, 0.0};
  auto r1 = env.step(push);
  CHECK(env.state().velocity.x == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(env.state().velocity.y == 0.0);
  CHECK(r1.reward == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("pretrain_step velocity clamp at v_max") {
  // clamp oracle: (1-0.1)*0.5 + 0.1*1 = 0.55 whose norm exceeds v_max
  PointRobotState s;
  s.velocity = {0.5, 0.0};
  const double push[2] = {1.0, 0.0};
  const double reward = integrate_free(s, push, kExampleDyn);
  CHECK(reward == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.velocity.norm() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pretrain_step rejects non-finite actions") {
  PretrainEnv env(kExampleDyn);
  RngStream rng(0, 0);
  env.reset(rng);
  const double bad[2] = {std::nan(""), 0.0};
  CHECK_THROWS_AS(env.step(bad), InvalidArgument);
}

TEST_CASE("pretrain reward bound 0 <= r <= v_max under random actions") {
  PretrainEnv env;  // working defaults
  RngStream rng(21, 1);
  env.reset(rng);
  for (int t = 0; t < 2000; ++t) {
    const double a[2] = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const auto r = env.step(a);
    CHECK(r.reward >= 0.0);
    CHECK(r.reward <= env.dynamics().v_max + 1e-15);
  }
}

TEST_CASE("pretrain observation excludes position") {
  PretrainEnv env;
  RngStream rng(2, 2);
  auto obs = env.reset(rng);
  CHECK(obs.agent.size() == 3);  // vx, vy, heading
  const double a[2] = {1.0, 1.0};
  for (int t = 0; t < 50; ++t) obs = env.step(a).obs;
  CHECK(obs.agent.size() == 3);
  CHECK(obs.dim() == 3);
  CHECK(env.com().norm() > 0.1);  // moved, yet the observation carries no position
}

TEST_CASE("maze reset is deterministic and at the start") {
  for (int id = 0; id < 4; ++id) {
    MazeEnv env(maze_spec(id));
    RngStream rng(0, 0);
    const auto o1 = env.reset(rng);
    const auto s1 = env.state();
    const auto o2 = env.reset(rng);
    CHECK(o1.agent == o2.agent);
    CHECK(o1.rest == o2.rest);
    CHECK(s1.position == env.spec().start);
    CHECK(s1.velocity == Vec2{0.0, 0.0});
    CHECK(s1.heading == 0.0);
  }
}

TEST_CASE("maze at goal center grants reward and terminates") {
  MazeEnv env(maze_spec(0), {}, kExampleDyn);
  RngStream rng(0, 0);
  env.reset(rng);
  PointRobotState s;
  s.position = env.spec().goal;
  env.set_state(s);
  const double a[2] = {0.0, 0.0};
  const auto r = env.step(a);
  CHECK(r.reward == 1.0);
  CHECK(r.done);
}

TEST_CASE("maze dynamics equal pretrain dynamics away from walls") {
  MazeEnv maze(maze_spec(2), {}, kExampleDyn);  // ring maze, open around (0,-4)
  PretrainEnv free(kExampleDyn);
  RngStream rng(5, 5);
  maze.reset(rng);
  free.reset(rng);
  RngStream act(17, 3);
  for (int t = 0; t < 10; ++t) {
    const double a[2] = {act.uniform(-0.3, 0.3), act.uniform(-0.3, 0.3)};
    const auto rm = maze.step(a);
    free.step(a);
    CHECK(rm.reward == 0.0);
    CHECK(!rm.done);
    const Vec2 offset{0.0, -4.0};
    CHECK((maze.state().position - offset - free.state().position).norm() < 1e-12);
    CHECK((maze.state().velocity - free.state().velocity).norm() == 0.0);
  }
}

TEST_CASE("maze observation layout: agent + wall rays + goal rays") {
  SensorConfig sensors;
  MazeEnv env(maze_spec(0), sensors);
  RngStream rng(0, 0);
  const auto obs = env.reset(rng);
  CHECK(obs.agent.size() == 3);
  CHECK(static_cast<int>(obs.rest.size()) == 2 * sensors.n_rays);
  CHECK(env.obs_dim() == 3 + 16);
  for (double v : obs.rest) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("collision safety: random action sequences never cross a wall") {
  // stress with the fast example dynamics
  for (int id = 0; id < 4; ++id) {
    MazeEnv env(maze_spec(id), {}, kExampleDyn);
    const auto& walls = env.spec().walls;
    RngStream rng(100 + static_cast<std::uint64_t>(id), 7);
    int violations = 0;
    for (int seq = 0; seq < 2500; ++seq) {
      RngStream seq_rng = rng.substream(static_cast<std::uint64_t>(seq));
      env.reset(seq_rng);
      Vec2 prev = env.state().position;
      for (int t = 0; t < 20; ++t) {
        const double a[2] = {seq_rng.uniform(-1.0, 1.0), seq_rng.uniform(-1.0, 1.0)};
        env.step(a);
        const Vec2 cur = env.state().position;
        for (const auto& w : walls)
          if (segments_intersect(prev, cur, w.a, w.b)) ++violations;
        prev = cur;
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("gather reset determinism and spawn constraints") {
  GatherEnv env;
  RngStream rng_a(42, streams::kEnv);
  env.reset(rng_a);
  const auto balls_1 = env.balls();
  RngStream rng_b(42, streams::kEnv);
  env.reset(rng_b);
  const auto balls_2 = env.balls();
  REQUIRE(balls_1.size() == balls_2.size());
  for (std::size_t i = 0; i < balls_1.size(); ++i) {
    CHECK(balls_1[i].position == balls_2[i].position);
    CHECK(balls_1[i].green == balls_2[i].green);
  }
  for (std::size_t i = 0; i < balls_1.size(); ++i) {
    CHECK(balls_1[i].position.norm() >= env.spec().min_spawn_dist);
    for (std::size_t j = i + 1; j < balls_1.size(); ++j)
      CHECK((balls_1[i].position - balls_1[j].position).norm() >= 2.0 * env.spec().ball_radius);
  }

  GatherSpec impossible;
  impossible.arena_half_size = 1.0;
  impossible.min_spawn_dist = 10.0;
  GatherEnv bad(impossible);
  RngStream rng_c(1, 1);
  CHECK_THROWS_AS(bad.reset(rng_c), RuntimeFailure);
}

TEST_CASE("gather consumption rewards") {
  GatherEnv env;
  RngStream rng(7, streams::kEnv);
  env.reset(rng);

  // move one green ball onto the robot
  auto& balls = env.balls();
  const std::size_t n_before = balls.size();
  for (auto& b : balls)
    if (b.green) {
      b.position = env.state().position;
      break;
    }
  const double zero[2] = {0.0, 0.0};
  auto r = env.step(zero);
  CHECK(r.reward == 1.0);
  CHECK(env.balls().size() == n_before - 1);

  // one green and one red simultaneously: net zero, both removed
  env.reset(rng);
  auto& balls2 = env.balls();
  bool green_set = false, red_set = false;
  for (auto& b : balls2) {
    if (b.green && !green_set) {
      b.position = env.state().position;
      green_set = true;
    } else if (!b.green && !red_set) {
      b.position = env.state().position;
      red_set = true;
    }
  }
  const std::size_t count2 = env.balls().size();
  auto r2 = env.step(zero);
  CHECK(r2.reward == 0.0);
  CHECK(env.balls().size() == count2 - 2);

  // no overlap: nothing happens
  env.reset(rng);
  const std::size_t count3 = env.balls().size();
  auto r3 = env.step(zero);
  CHECK(r3.reward == 0.0);
  CHECK(env.balls().size() == count3);
}

TEST_CASE("gather episode reward stays within [-n_red, n_green]") {
  GatherEnv env;
  RngStream rng(9, streams::kEnv);
  for (int ep = 0; ep < 5; ++ep) {
    auto ep_rng = rng.substream(static_cast<std::uint64_t>(ep));
    env.reset(ep_rng);
    double total = 0.0;
    for (int t = 0; t < 400; ++t) {
      const double a[2] = {ep_rng.uniform(-1.0, 1.0), ep_rng.uniform(-1.0, 1.0)};
      const auto r = env.step(a);
      total += r.reward;
      if (r.done) break;
    }
    CHECK(total >= -env.spec().n_red);
    CHECK(total <= env.spec().n_green);
  }
}

TEST_CASE("gather terminates when all green balls are gone") {
  GatherEnv env;
  RngStream rng(11, streams::kEnv);
  env.reset(rng);
  for (auto& b : env.balls())
    if (b.green) b.position = env.state().position;
  const double zero[2] = {0.0, 0.0};
  const auto r = env.step(zero);
  CHECK(r.reward == doctest::Approx(static_cast<double>(env.spec().n_green)));
  CHECK(r.done);
}

TEST_CASE("gather observation layout") {
  SensorConfig sensors;
  GatherEnv env({}, sensors);
  RngStream rng(3, streams::kEnv);
  const auto obs = env.reset(rng);
  CHECK(static_cast<int>(obs.rest.size()) == 3 * sensors.n_rays);
  CHECK(env.obs_dim() == 3 + 24);
}

TEST_CASE("maze specs: starts and goals are in free space, maze 1 mirrors maze 0") {
  for (int id = 0; id < 4; ++id) {
    const auto spec = maze_spec(id);
    // neither start nor goal sits on a wall
    for (const auto& w : spec.walls) {
      const Vec2 d = w.direction();
      for (const Vec2 p : {spec.start, spec.goal}) {
        const Vec2 ap = p - w.a;
        const double t = std::clamp(ap.dot(d) / d.norm2(), 0.0, 1.0);
        CHECK((w.a + d * t - p).norm() > 0.5);
      }
    }
  }
  const auto m0 = maze_spec(0);
  const auto m1 = maze_spec(1);
  REQUIRE(m0.walls.size() == m1.walls.size());
  // the mirrored image of every maze-0 wall appears among maze-1's walls
  for (const auto& w : m0.walls) {
    const Vec2 ma{-w.a.x, w.a.y}, mb{-w.b.x, w.b.y};
    bool found = false;
    for (const auto& v : m1.walls)
      found |= (v.a == ma && v.b == mb) || (v.a == mb && v.b == ma);
    CHECK(found);
  }
  CHECK(maze_spec(2).goal == Vec2{4.0, 4.0});
  CHECK(maze_spec(3).goal == Vec2{-4.0, -4.0});
  CHECK_THROWS_AS(maze_spec(4), InvalidArgument);
}

TEST_CASE("task env variant dispatch") {
  auto env = make_task_env(TaskId::kMaze0);
  RngStream rng(0, 0);
  const auto obs = env_reset(env, rng);
  CHECK(static_cast<int>(obs.full().size()) == env_obs_dim(env));
  CHECK(env_agent_dim(env) == 3);
  const double a[2] = {1.0, 0.0};
  const auto r = env_step(env, a);
  CHECK(!r.done);
  CHECK(env_com(env).x > 0.0);
  CHECK(env_speed(env) > 0.0);
  CHECK(task_from_name("gather") == TaskId::kGather);
  CHECK_THROWS_AS(task_from_name("bogus"), InvalidArgument);
}

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "skillrl/core/errors.hpp"
#include "skillrl/envs/gather_env.hpp"
#include "skillrl/envs/robot.hpp"
#include "skillrl/envs/sensors.hpp"
#include "skillrl/trpo/trpo.hpp"

namespace skillrl {

// Full description of one experiment invocation. Serializes to versioned
// JSON; unknown keys are rejected so a typo cannot silently fall back to a
// default hyperparameter.
struct ExperimentConfig {
  int version = 1;
  std::string mode = "pretrain";  // pretrain | downstream | visitation | analyze

  // task / environment
  std::string task = "pretrain";
  DynamicsConfig dynamics;
  SensorConfig sensors;
  GatherSpec gather;

  // policy
  int latent_count = 6;
  std::string integration = "bilinear";  // concat | bilinear
  std::vector<int> hidden{32, 32};

  // mutual-information regularizer (alpha_h is a sweep axis)
  std::vector<double> alpha_h{0.01};
  double mesh_density = 10.0;
  double posterior_floor = 1e-3;

  // optimizer
  TrpoConfig trpo;

  // run shape
  int horizon = 500;
  int n_iterations = 200;
  std::vector<std::uint64_t> seeds{0};

  // downstream (switch_time is a sweep axis)
  std::vector<int> switch_time{50};
  std::string skill_mode = "snn";  // snn | multipolicy
  std::vector<std::string> skill_sources;
  std::string baseline_mode = "none";  // none | com-proxy

  // evaluation / analysis
  int eval_episodes = 20;
  int eval_every = 10;
  int visitation_rollouts = 100;
  std::string latent_mode = "per-rollout-uniform";  // per-rollout-uniform | fixed | random-manager
  int fixed_latent = 0;
  double svg_axis_limit = 30.0;

  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;

  void validate() const {
    if (version != 1) fail_invalid("config: version ", version, " unsupported (expected 1)");
    const auto one_of = [](const std::string& field, const std::string& value,
                           std::initializer_list<const char*> allowed) {
      for (const char* a : allowed)
        if (value == a) return;
      std::string opts;
      for (const char* a : allowed) opts += std::string(opts.empty() ? "" : "|") + a;
      fail_invalid("config: field '", field, "' has value '", value, "', expected one of ", opts);
    };
    one_of("mode", mode, {"pretrain", "downstream", "visitation", "analyze"});
    one_of("task", task, {"pretrain", "maze0", "maze1", "maze2", "maze3", "gather"});
    one_of("integration", integration, {"concat", "bilinear"});
    one_of("skill_mode", skill_mode, {"snn", "multipolicy"});
    one_of("baseline_mode", baseline_mode, {"none", "com-proxy"});
    one_of("latent_mode", latent_mode, {"per-rollout-uniform", "fixed", "random-manager"});
    if (latent_count < 2) fail_invalid("config: field 'latent_count' must be >= 2, got ", latent_count);
    if (horizon < 1) fail_invalid("config: field 'horizon' must be >= 1, got ", horizon);
    if (n_iterations < 1) fail_invalid("config: field 'n_iterations' must be >= 1, got ", n_iterations);
    if (seeds.empty()) fail_invalid("config: field 'seeds' must not be empty");
    for (int t : switch_time)
      if (t < 1 || t > horizon) fail_invalid("config: field 'switch_time' value ", t, " outside [1, horizon]");
    for (double a : alpha_h)
      if (a < 0.0) fail_invalid("config: field 'alpha_h' value ", a, " must be >= 0");
    trpo.validate();
  }
};

namespace detail {

inline void check_keys(const nlohmann::json& j, const std::string& section,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok |= (key == a);
    if (!ok) fail_invalid("config: unknown key '", key, "' in section '", section, "'");
  }
}

}  // namespace detail

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["version"] = c.version;
  j["mode"] = c.mode;
  j["task"] = c.task;
  j["env"] = {{"damping", c.dynamics.damping},
              {"gain", c.dynamics.gain},
              {"v_max", c.dynamics.v_max},
              {"n_rays", c.sensors.n_rays},
              {"sensor_range", c.sensors.max_range},
              {"gather_half_size", c.gather.arena_half_size},
              {"gather_n_green", c.gather.n_green},
              {"gather_n_red", c.gather.n_red},
              {"gather_ball_radius", c.gather.ball_radius},
              {"gather_min_spawn_dist", c.gather.min_spawn_dist},
              {"gather_robot_radius", c.gather.robot_radius}};
  j["policy"] = {{"latent_count", c.latent_count}, {"integration", c.integration}, {"hidden", c.hidden}};
  j["mi"] = {{"alpha_h", c.alpha_h}, {"mesh_density", c.mesh_density}, {"posterior_floor", c.posterior_floor}};
  j["trpo"] = {{"step_kl", c.trpo.step_kl},
               {"discount", c.trpo.discount},
               {"cg_iters", c.trpo.cg_iters},
               {"cg_damping", c.trpo.cg_damping},
               {"backtrack_ratio", c.trpo.backtrack_ratio},
               {"max_backtracks", c.trpo.max_backtracks},
               {"batch_size", c.trpo.batch_size}};
  j["run"] = {{"horizon", c.horizon}, {"n_iterations", c.n_iterations}, {"seeds", c.seeds}};
  j["downstream"] = {{"switch_time", c.switch_time},
                     {"skill_mode", c.skill_mode},
                     {"skill_sources", c.skill_sources},
                     {"baseline_mode", c.baseline_mode}};
  j["analysis"] = {{"eval_episodes", c.eval_episodes},
                   {"eval_every", c.eval_every},
                   {"visitation_rollouts", c.visitation_rollouts},
                   {"latent_mode", c.latent_mode},
                   {"fixed_latent", c.fixed_latent},
                   {"svg_axis_limit", c.svg_axis_limit}};
  j["output_dir"] = c.output_dir;
  return j;
}

inline std::string serialize_config(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  detail::check_keys(j, "<root>",
                     {"version", "mode", "task", "env", "policy", "mi", "trpo", "run", "downstream", "analysis",
                      "output_dir"});
  if (!j.contains("version")) fail_invalid("config: missing required key 'version'");
  ExperimentConfig c;
  c.version = j.at("version").get<int>();
  c.mode = j.value("mode", c.mode);
  c.task = j.value("task", c.task);
  if (j.contains("env")) {
    const auto& e = j.at("env");
    detail::check_keys(e, "env",
                       {"damping", "gain", "v_max", "n_rays", "sensor_range", "gather_half_size", "gather_n_green",
                        "gather_n_red", "gather_ball_radius", "gather_min_spawn_dist", "gather_robot_radius"});
    c.dynamics.damping = e.value("damping", c.dynamics.damping);
    c.dynamics.gain = e.value("gain", c.dynamics.gain);
    c.dynamics.v_max = e.value("v_max", c.dynamics.v_max);
    c.sensors.n_rays = e.value("n_rays", c.sensors.n_rays);
    c.sensors.max_range = e.value("sensor_range", c.sensors.max_range);
    c.gather.arena_half_size = e.value("gather_half_size", c.gather.arena_half_size);
    c.gather.n_green = e.value("gather_n_green", c.gather.n_green);
    c.gather.n_red = e.value("gather_n_red", c.gather.n_red);
    c.gather.ball_radius = e.value("gather_ball_radius", c.gather.ball_radius);
    c.gather.min_spawn_dist = e.value("gather_min_spawn_dist", c.gather.min_spawn_dist);
    c.gather.robot_radius = e.value("gather_robot_radius", c.gather.robot_radius);
  }
  if (j.contains("policy")) {
    const auto& p = j.at("policy");
    detail::check_keys(p, "policy", {"latent_count", "integration", "hidden"});
    c.latent_count = p.value("latent_count", c.latent_count);
    c.integration = p.value("integration", c.integration);
    c.hidden = p.value("hidden", c.hidden);
  }
  if (j.contains("mi")) {
    const auto& m = j.at("mi");
    detail::check_keys(m, "mi", {"alpha_h", "mesh_density", "posterior_floor"});
    c.alpha_h = m.value("alpha_h", c.alpha_h);
    c.mesh_density = m.value("mesh_density", c.mesh_density);
    c.posterior_floor = m.value("posterior_floor", c.posterior_floor);
  }
  if (j.contains("trpo")) {
    const auto& t = j.at("trpo");
    detail::check_keys(
        t, "trpo",
        {"step_kl", "discount", "cg_iters", "cg_damping", "backtrack_ratio", "max_backtracks", "batch_size"});
    c.trpo.step_kl = t.value("step_kl", c.trpo.step_kl);
    c.trpo.discount = t.value("discount", c.trpo.discount);
    c.trpo.cg_iters = t.value("cg_iters", c.trpo.cg_iters);
    c.trpo.cg_damping = t.value("cg_damping", c.trpo.cg_damping);
    c.trpo.backtrack_ratio = t.value("backtrack_ratio", c.trpo.backtrack_ratio);
    c.trpo.max_backtracks = t.value("max_backtracks", c.trpo.max_backtracks);
    c.trpo.batch_size = t.value("batch_size", c.trpo.batch_size);
  }
  if (j.contains("run")) {
    const auto& r = j.at("run");
    detail::check_keys(r, "run", {"horizon", "n_iterations", "seeds"});
    c.horizon = r.value("horizon", c.horizon);
    c.n_iterations = r.value("n_iterations", c.n_iterations);
    c.seeds = r.value("seeds", c.seeds);
  }
  if (j.contains("downstream")) {
    const auto& d = j.at("downstream");
    detail::check_keys(d, "downstream", {"switch_time", "skill_mode", "skill_sources", "baseline_mode"});
    c.switch_time = d.value("switch_time", c.switch_time);
    c.skill_mode = d.value("skill_mode", c.skill_mode);
    c.skill_sources = d.value("skill_sources", c.skill_sources);
    c.baseline_mode = d.value("baseline_mode", c.baseline_mode);
  }
  if (j.contains("analysis")) {
    const auto& a = j.at("analysis");
    detail::check_keys(a, "analysis",
                       {"eval_episodes", "eval_every", "visitation_rollouts", "latent_mode", "fixed_latent",
                        "svg_axis_limit"});
    c.eval_episodes = a.value("eval_episodes", c.eval_episodes);
    c.eval_every = a.value("eval_every", c.eval_every);
    c.visitation_rollouts = a.value("visitation_rollouts", c.visitation_rollouts);
    c.latent_mode = a.value("latent_mode", c.latent_mode);
    c.fixed_latent = a.value("fixed_latent", c.fixed_latent);
    c.svg_axis_limit = a.value("svg_axis_limit", c.svg_axis_limit);
  }
  c.output_dir = j.value("output_dir", c.output_dir);
  c.validate();
  return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_invalid("config: not valid JSON: ", e.what());
  }
  return config_from_json(j);
}

// Appendix-A / Table-1 values as a named preset; the desk-scale defaults are
// what ExperimentConfig carries out of the box.
inline void apply_preset(ExperimentConfig& c, const std::string& name) {
  if (name == "desk") return;
  if (name == "paper-scale") {
    c.latent_count = 6;
    c.hidden = {32, 32};
    c.mesh_density = 10.0;
    c.trpo.step_kl = 0.01;
    c.trpo.discount = 0.99;
    if (c.mode == "pretrain") {
      c.trpo.batch_size = 50000;
      c.horizon = 500;
    } else if (c.task == "gather") {
      c.trpo.batch_size = 100000;
      c.horizon = 5000;
      c.switch_time = {10};
    } else {
      c.trpo.batch_size = 1000000;
      c.horizon = 10000;
      c.switch_time = {500};
    }
    return;
  }
  if (name == "gather-benchmark") {  // the comparison setting: path 500, batch 50k
    c.task = "gather";
    c.horizon = 500;
    c.trpo.batch_size = 50000;
    c.switch_time = {10};
    return;
  }
  fail_invalid("config: unknown preset '", name, "' (expected desk|paper-scale|gather-benchmark)");
}

}  // namespace skillrl

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/param_vector.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/policy/gaussian.hpp"
#include "skillrl/policy/mlp.hpp"

namespace skillrl {

enum class Integration { kConcat, kBilinear };

inline std::string integration_name(Integration i) { return i == Integration::kConcat ? "concat" : "bilinear"; }

inline std::vector<double> one_hot(int z, int k_classes) {
  if (z < 0 || z >= k_classes) fail_invalid("one_hot: index ", z, " outside [0,", k_classes, ")");
  std::vector<double> v(k_classes, 0.0);
  v[z] = 1.0;
  return v;
}

inline void validate_one_hot(std::span<const double> z) {
  int ones = 0;
  for (double v : z) {
    if (v == 1.0)
      ++ones;
    else if (v != 0.0)
      fail_invalid("latent vector is not one-hot: component ", v);
  }
  if (ones != 1) fail_invalid("latent vector is not one-hot: ", ones, " components set");
}

// [obs ; z]
inline std::vector<double> embed_concat(std::span<const double> obs, std::span<const double> z) {
  validate_one_hot(z);
  std::vector<double> out;
  out.reserve(obs.size() + z.size());
  out.insert(out.end(), obs.begin(), obs.end());
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

// Row-major flattened outer product obs (x) z: obs index outer, latent inner.
// With a one-hot z this selects one first-layer weight block per latent.
inline std::vector<double> embed_bilinear(std::span<const double> obs, std::span<const double> z) {
  validate_one_hot(z);
  std::vector<double> out(obs.size() * z.size(), 0.0);
  for (std::size_t i = 0; i < obs.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) out[i * z.size() + j] = obs[i] * z[j];
  return out;
}

// Gaussian MLP head over an arbitrary input: mean = MLP(input), log_std a
// free state-independent parameter block. Shared by the SNN (embedded input)
// and the plain task policies (raw observation input).
class GaussianNet {
 public:
  GaussianNet(int input_dim, int action_dim, std::vector<int> hidden)
      : mlp_(input_dim, MlpSpec{std::move(hidden), action_dim}), action_dim_(action_dim) {
    auto table = mlp_.shape_table();
    table.push_back({"log_std", {action_dim_}});
    params_ = ParamVector(std::move(table));
  }

  void init(RngStream& rng) {
    mlp_.init_params(mlp_params(), rng);
    for (auto& v : params_.block("log_std")) v = 0.0;
  }

  const Mlp& mlp() const { return mlp_; }
  int input_dim() const { return mlp_.input_dim(); }
  int action_dim() const { return action_dim_; }
  int param_count() const { return params_.size(); }
  ParamVector& params() { return params_; }
  const ParamVector& params() const { return params_; }
  std::span<double> mlp_params() { return std::span<double>(params_.values()).first(mlp_.param_count()); }
  std::span<const double> mlp_params() const {
    return std::span<const double>(params_.values()).first(mlp_.param_count());
  }
  std::span<const double> log_std() const { return params_.block("log_std"); }
  std::span<double> log_std() { return params_.block("log_std"); }

  GaussianActionDist dist_from_input(std::span<const double> input, MlpWorkspace& ws) const {
    const auto mean = mlp_.forward(mlp_params(), input, ws);
    GaussianActionDist d;
    d.mean.assign(mean.begin(), mean.end());
    d.log_std.assign(log_std().begin(), log_std().end());
    return d;
  }

  GaussianActionDist dist_from_input(std::span<const double> input) const {
    MlpWorkspace ws;
    return dist_from_input(input, ws);
  }

  // grad += weight * d log pi(action | input) / d params, for the forward
  // cached in ws (which must be at the current parameters).
  void accumulate_logprob_grad(const MlpWorkspace& ws, std::span<const double> action, double weight,
                               std::span<double> grad) const {
    if (static_cast<int>(grad.size()) != param_count())
      fail_invalid("accumulate_logprob_grad: grad size ", grad.size(), " != ", param_count());
    const auto& mean = ws.act.back();
    const auto ls = log_std();
    std::vector<double> d_mean(action_dim_);
    double* g_logstd = grad.data() + mlp_.param_count();
    for (int i = 0; i < action_dim_; ++i) {
      const double inv_var = std::exp(-2.0 * ls[i]);
      const double delta = action[i] - mean[i];
      d_mean[i] = delta * inv_var;
      g_logstd[i] += weight * (delta * delta * inv_var - 1.0);
    }
    mlp_.backward(mlp_params(), ws, d_mean, grad.first(mlp_.param_count()), weight);
  }

 private:
  Mlp mlp_;
  int action_dim_;
  ParamVector params_;
};

// Multi-skill stochastic policy: a categorical latent is integrated with the
// observation (concat or bilinear) and fed to a Gaussian MLP head. The latent
// is drawn once per rollout during pre-training and supplied by the manager
// afterwards.
class SnnPolicy {
 public:
  SnnPolicy(int obs_dim, int latent_count, int action_dim, Integration integration,
            std::vector<int> hidden = {32, 32})
      : obs_dim_(obs_dim),
        latent_count_(latent_count),
        integration_(integration),
        net_(integration == Integration::kConcat ? obs_dim + latent_count : obs_dim * latent_count, action_dim,
             std::move(hidden)) {
    if (latent_count_ < 1) fail_invalid("SnnPolicy: latent_count ", latent_count_, " must be >= 1");
  }

  int obs_dim() const { return obs_dim_; }
  int latent_count() const { return latent_count_; }
  int action_dim() const { return net_.action_dim(); }
  int embed_dim() const { return net_.input_dim(); }
  Integration integration() const { return integration_; }
  GaussianNet& net() { return net_; }
  const GaussianNet& net() const { return net_; }

  void init(RngStream& rng) { net_.init(rng); }

  std::vector<double> embed(std::span<const double> obs, int z) const {
    if (static_cast<int>(obs.size()) != obs_dim_)
      fail_invalid("SnnPolicy::embed: obs dim ", obs.size(), " != declared ", obs_dim_);
    const auto zv = one_hot(z, latent_count_);
    return integration_ == Integration::kConcat ? embed_concat(obs, zv) : embed_bilinear(obs, zv);
  }

  GaussianActionDist forward(std::span<const double> obs, int z, MlpWorkspace& ws) const {
    return net_.dist_from_input(embed(obs, z), ws);
  }

  GaussianActionDist forward(std::span<const double> obs, int z) const {
    MlpWorkspace ws;
    return forward(obs, z, ws);
  }

 private:
  int obs_dim_;
  int latent_count_;
  Integration integration_;
  GaussianNet net_;
};

// Plain uni-modal Gaussian policy over a raw observation (the multi-policy
// baseline skills and the flat task baselines).
class FlatGaussianPolicy {
 public:
  FlatGaussianPolicy(int obs_dim, int action_dim, std::vector<int> hidden = {32, 32})
      : net_(obs_dim, action_dim, std::move(hidden)) {}

  int obs_dim() const { return net_.input_dim(); }
  int action_dim() const { return net_.action_dim(); }
  GaussianNet& net() { return net_; }
  const GaussianNet& net() const { return net_; }

  void init(RngStream& rng) { net_.init(rng); }

  GaussianActionDist forward(std::span<const double> obs, MlpWorkspace& ws) const {
    return net_.dist_from_input(obs, ws);
  }
  GaussianActionDist forward(std::span<const double> obs) const { return net_.dist_from_input(obs); }

 private:
  GaussianNet net_;
};

// Exact gradient of log pi(action | obs, z) with respect to every policy
// parameter, log_std included.
inline ParamVector grad_log_prob(const SnnPolicy& policy, std::span<const double> obs, int z,
                                 std::span<const double> action) {
  auto table = policy.net().params().shape_table();
  ParamVector grad(std::move(table));
  MlpWorkspace ws;
  const auto input = policy.embed(obs, z);
  policy.net().mlp().forward(policy.net().mlp_params(), input, ws);
  policy.net().accumulate_logprob_grad(ws, action, 1.0, grad.values());
  return grad;
}

}  // namespace skillrl

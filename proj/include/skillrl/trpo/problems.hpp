#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/policy/categorical.hpp"
#include "skillrl/policy/gaussian.hpp"
#include "skillrl/policy/manager_policy.hpp"
#include "skillrl/policy/snn_policy.hpp"

namespace skillrl {

inline constexpr double kLogRatioGuard = 80.0;

// Surrogate-objective view of a Gaussian policy over one collected batch.
// Rows are the raw network inputs (embedded observation for the SNN, plain
// observation for flat policies) paired with the sampled action, the
// log-probability recorded at collection time, and the advantage.
//
// The reference distributions and activation caches are snapshotted at
// construction (the pre-update parameters), so Fisher-vector products stay
// anchored at theta_old while the line search moves the live parameters.
class GaussianBatchProblem {
 public:
  GaussianBatchProblem(GaussianNet& net, std::vector<std::vector<double>> inputs,
                       std::vector<std::vector<double>> actions, std::vector<double> old_log_probs,
                       std::vector<double> advantages)
      : net_(net),
        inputs_(std::move(inputs)),
        actions_(std::move(actions)),
        old_log_probs_(std::move(old_log_probs)),
        advantages_(std::move(advantages)) {
    const std::size_t n = inputs_.size();
    if (n == 0) fail_invalid("GaussianBatchProblem: empty batch");
    if (actions_.size() != n || old_log_probs_.size() != n || advantages_.size() != n)
      fail_invalid("GaussianBatchProblem: row counts disagree (", n, "/", actions_.size(), "/",
                   old_log_probs_.size(), "/", advantages_.size(), ")");
    old_params_ = net_.params().values();
    old_ws_.resize(n);
    old_dists_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      net_.mlp().init_workspace(old_ws_[i]);
      old_dists_.push_back(net_.dist_from_input(inputs_[i], old_ws_[i]));
    }
    old_inv_var_.resize(net_.action_dim());
    for (int d = 0; d < net_.action_dim(); ++d) old_inv_var_[d] = std::exp(-2.0 * old_dists_.front().log_std[d]);
  }

  int dim() const { return net_.param_count(); }
  std::size_t batch_size() const { return inputs_.size(); }
  std::vector<double> params() const { return net_.params().values(); }
  void set_params(std::span<const double> p) { net_.params().set_values(p); }

  // mean over the batch of exp(logpi - logpi_old) * A at the live parameters
  double surrogate_or_nan() const {
    MlpWorkspace ws;
    double acc = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const auto dist = net_.dist_from_input(inputs_[i], ws);
      const double dlp = dist.log_prob(actions_[i]) - old_log_probs_[i];
      if (std::abs(dlp) > kLogRatioGuard) return std::numeric_limits<double>::quiet_NaN();
      acc += std::exp(dlp) * advantages_[i];
    }
    return acc / static_cast<double>(inputs_.size());
  }

  double surrogate() const {
    const double s = surrogate_or_nan();
    if (!std::isfinite(s))
      fail_runtime("surrogate_loss: |log ratio| exceeded ", kLogRatioGuard, " (diverged importance weight)");
    return s;
  }

  // gradient of the surrogate with respect to the live parameters
  std::vector<double> surrogate_gradient() const {
    std::vector<double> grad(static_cast<std::size_t>(dim()), 0.0);
    MlpWorkspace ws;
    net_.mlp().init_workspace(ws);
    const double inv_n = 1.0 / static_cast<double>(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const auto dist = net_.dist_from_input(inputs_[i], ws);
      const double dlp = dist.log_prob(actions_[i]) - old_log_probs_[i];
      if (std::abs(dlp) > kLogRatioGuard)
        fail_runtime("surrogate gradient: |log ratio| exceeded ", kLogRatioGuard, " at row ", i);
      net_.accumulate_logprob_grad(ws, actions_[i], std::exp(dlp) * advantages_[i] * inv_n, grad);
    }
    return grad;
  }

  // mean KL(old || live) over the batch, exact closed form
  double mean_kl() const {
    MlpWorkspace ws;
    double acc = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      acc += gaussian_kl(old_dists_[i], net_.dist_from_input(inputs_[i], ws));
    return acc / static_cast<double>(inputs_.size());
  }

  // Exact Hessian-vector product of the mean KL at theta_old plus damping.
  // At the anchor the KL Hessian is J^T diag(1/sigma^2) J on the mean
  // parameters and 2*I on log_std, with zero cross blocks.
  std::vector<double> fvp(std::span<const double> v, double damping) const {
    if (static_cast<int>(v.size()) != dim()) fail_invalid("fvp: vector dim ", v.size(), " != ", dim());
    const int mlp_count = net_.mlp().param_count();
    const int act_dim = net_.action_dim();
    std::vector<double> out(v.size(), 0.0);
    const auto old_span = std::span<const double>(old_params_).first(mlp_count);
    const auto v_mlp = v.first(mlp_count);
    std::vector<double> d_mean(static_cast<std::size_t>(act_dim));
    const double inv_n = 1.0 / static_cast<double>(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      net_.mlp().jvp(old_span, v_mlp, old_ws_[i], d_mean);
      for (int d = 0; d < act_dim; ++d) d_mean[d] *= old_inv_var_[d];
      net_.mlp().backward(old_span, old_ws_[i], d_mean, std::span<double>(out).first(mlp_count), inv_n);
    }
    for (int d = 0; d < act_dim; ++d) out[mlp_count + d] = 2.0 * v[mlp_count + d];
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] += damping * v[i];
      if (!std::isfinite(out[i])) fail_runtime("fvp: non-finite component ", i);
    }
    return out;
  }

  const std::vector<double>& advantages() const { return advantages_; }

 private:
  GaussianNet& net_;
  std::vector<std::vector<double>> inputs_;
  std::vector<std::vector<double>> actions_;
  std::vector<double> old_log_probs_;
  std::vector<double> advantages_;
  std::vector<double> old_params_;
  std::vector<MlpWorkspace> old_ws_;
  std::vector<GaussianActionDist> old_dists_;
  std::vector<double> old_inv_var_;
};

// Same view for the categorical manager: actions are skill indices and the
// output-space Hessian of the KL at the anchor is diag(p) - p p^T.
class CategoricalBatchProblem {
 public:
  CategoricalBatchProblem(ManagerPolicy& manager, std::vector<std::vector<double>> inputs, std::vector<int> actions,
                          std::vector<double> old_log_probs, std::vector<double> advantages)
      : manager_(manager),
        inputs_(std::move(inputs)),
        actions_(std::move(actions)),
        old_log_probs_(std::move(old_log_probs)),
        advantages_(std::move(advantages)) {
    const std::size_t n = inputs_.size();
    if (n == 0) fail_invalid("CategoricalBatchProblem: empty batch");
    if (actions_.size() != n || old_log_probs_.size() != n || advantages_.size() != n)
      fail_invalid("CategoricalBatchProblem: row counts disagree");
    old_params_ = manager_.params().values();
    old_ws_.resize(n);
    old_dists_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      manager_.mlp().init_workspace(old_ws_[i]);
      old_dists_.push_back(manager_.forward(inputs_[i], old_ws_[i]));
    }
  }

  int dim() const { return manager_.param_count(); }
  std::size_t batch_size() const { return inputs_.size(); }
  std::vector<double> params() const { return manager_.params().values(); }
  void set_params(std::span<const double> p) { manager_.params().set_values(p); }

  double surrogate_or_nan() const {
    MlpWorkspace ws;
    double acc = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const double dlp = manager_.forward(inputs_[i], ws).log_prob(actions_[i]) - old_log_probs_[i];
      if (std::abs(dlp) > kLogRatioGuard) return std::numeric_limits<double>::quiet_NaN();
      acc += std::exp(dlp) * advantages_[i];
    }
    return acc / static_cast<double>(inputs_.size());
  }

  double surrogate() const {
    const double s = surrogate_or_nan();
    if (!std::isfinite(s)) fail_runtime("surrogate_loss: |log ratio| exceeded ", kLogRatioGuard);
    return s;
  }

  std::vector<double> surrogate_gradient() const {
    std::vector<double> grad(static_cast<std::size_t>(dim()), 0.0);
    MlpWorkspace ws;
    manager_.mlp().init_workspace(ws);
    const double inv_n = 1.0 / static_cast<double>(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const auto dist = manager_.forward(inputs_[i], ws);
      const double dlp = dist.log_prob(actions_[i]) - old_log_probs_[i];
      if (std::abs(dlp) > kLogRatioGuard)
        fail_runtime("surrogate gradient: |log ratio| exceeded ", kLogRatioGuard, " at row ", i);
      manager_.accumulate_logprob_grad(ws, actions_[i], std::exp(dlp) * advantages_[i] * inv_n, grad);
    }
    return grad;
  }

  double mean_kl() const {
    MlpWorkspace ws;
    double acc = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      acc += categorical_kl(old_dists_[i], manager_.forward(inputs_[i], ws));
    return acc / static_cast<double>(inputs_.size());
  }

  std::vector<double> fvp(std::span<const double> v, double damping) const {
    if (static_cast<int>(v.size()) != dim()) fail_invalid("fvp: vector dim ", v.size(), " != ", dim());
    const int k = manager_.skill_count();
    std::vector<double> out(v.size(), 0.0);
    std::vector<double> d_logits(static_cast<std::size_t>(k));
    std::vector<double> cotangent(static_cast<std::size_t>(k));
    const double inv_n = 1.0 / static_cast<double>(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      manager_.mlp().jvp(old_params_, v, old_ws_[i], d_logits);
      double mean_d = 0.0;
      const auto& lp = old_dists_[i].log_probs;
      for (int j = 0; j < k; ++j) mean_d += std::exp(lp[j]) * d_logits[j];
      for (int j = 0; j < k; ++j) {
        const double p = std::exp(lp[j]);
        cotangent[j] = p * (d_logits[j] - mean_d);
      }
      manager_.mlp().backward(old_params_, old_ws_[i], cotangent, out, inv_n);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] += damping * v[i];
      if (!std::isfinite(out[i])) fail_runtime("fvp: non-finite component ", i);
    }
    return out;
  }

 private:
  ManagerPolicy& manager_;
  std::vector<std::vector<double>> inputs_;
  std::vector<int> actions_;
  std::vector<double> old_log_probs_;
  std::vector<double> advantages_;
  std::vector<double> old_params_;
  std::vector<MlpWorkspace> old_ws_;
  std::vector<CategoricalDist> old_dists_;
};

}  // namespace skillrl

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/returns.hpp"
#include "skillrl/trpo/baseline.hpp"
#include "skillrl/trpo/cg.hpp"

namespace skillrl {

struct TrpoConfig {
  double step_kl = 0.01;
  double discount = 0.99;
  int cg_iters = 10;
  double cg_damping = 1e-5;
  double backtrack_ratio = 0.8;
  int max_backtracks = 15;
  int batch_size = 10000;  // timesteps per iteration

  void validate() const {
    if (!(step_kl > 0.0)) fail_invalid("TrpoConfig: step_kl ", step_kl, " must be positive");
    if (!(discount >= 0.0 && discount <= 1.0)) fail_invalid("TrpoConfig: discount ", discount, " outside [0,1]");
    if (cg_iters < 1) fail_invalid("TrpoConfig: cg_iters ", cg_iters, " must be >= 1");
    if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0))
      fail_invalid("TrpoConfig: backtrack_ratio ", backtrack_ratio, " outside (0,1)");
    if (max_backtracks < 0) fail_invalid("TrpoConfig: max_backtracks ", max_backtracks, " must be >= 0");
    if (batch_size < 1) fail_invalid("TrpoConfig: batch_size ", batch_size, " must be >= 1");
  }
};

struct TrpoDiagnostics {
  bool accepted = false;
  double surrogate_before = 0.0;
  double surrogate_after = 0.0;
  double kl = 0.0;
  double step_norm = 0.0;
  int backtracks = 0;
  double cg_residual = 0.0;
  double grad_norm = 0.0;
};

// One trust-region update: natural-gradient direction by conjugate gradient
// on the damped KL Hessian, step length from the quadratic model, then a
// backtracking line search that only accepts a candidate with exact mean KL
// within the bound and a strictly improved surrogate. Falls back to a no-op
// when nothing qualifies.
template <class Problem>
TrpoDiagnostics trpo_step(Problem& problem, const TrpoConfig& cfg) {
  cfg.validate();
  TrpoDiagnostics diag;
  const std::vector<double> theta_old = problem.params();
  const std::vector<double> grad = problem.surrogate_gradient();
  double g2 = 0.0;
  for (double g : grad) g2 += g * g;
  diag.grad_norm = std::sqrt(g2);
  diag.surrogate_before = problem.surrogate();
  diag.surrogate_after = diag.surrogate_before;
  if (diag.grad_norm < 1e-12) return diag;  // null gradient: keep theta

  auto cg_out = conjugate_gradient([&](const std::vector<double>& v) { return problem.fvp(v, cfg.cg_damping); },
                                   grad, cfg.cg_iters);
  diag.cg_residual = cg_out.residual_norm;
  const std::vector<double>& direction = cg_out.x;
  const std::vector<double> fvp_dir = problem.fvp(direction, cfg.cg_damping);
  double s_as = 0.0;
  for (std::size_t i = 0; i < direction.size(); ++i) s_as += direction[i] * fvp_dir[i];
  if (!(s_as > 0.0)) return diag;  // degenerate curvature: keep theta

  const double beta = std::sqrt(2.0 * cfg.step_kl / s_as);
  std::vector<double> candidate(theta_old.size());
  double scale = beta;
  for (int k = 0; k <= cfg.max_backtracks; ++k, scale *= cfg.backtrack_ratio) {
    for (std::size_t i = 0; i < theta_old.size(); ++i) candidate[i] = theta_old[i] + scale * direction[i];
    problem.set_params(candidate);
    const double kl = problem.mean_kl();
    const double surrogate = problem.surrogate_or_nan();
    if (std::isfinite(kl) && std::isfinite(surrogate) && kl <= cfg.step_kl &&
        surrogate > diag.surrogate_before) {
      diag.accepted = true;
      diag.kl = kl;
      diag.surrogate_after = surrogate;
      diag.backtracks = k;
      double sn = 0.0;
      for (std::size_t i = 0; i < theta_old.size(); ++i) {
        const double d = candidate[i] - theta_old[i];
        sn += d * d;
      }
      diag.step_norm = std::sqrt(sn);
      return diag;
    }
  }
  problem.set_params(theta_old);  // every candidate rejected
  diag.backtracks = cfg.max_backtracks + 1;
  return diag;
}

// Standard advantage pipeline: discounted returns minus the previous
// iteration's baseline prediction, then batch-normalized.
struct AdvantageResult {
  std::vector<double> advantages;        // flat, rollout-major
  std::vector<double> returns;           // discounted returns, same order
  std::vector<std::vector<double>> features;  // baseline features per row
};

template <class FeatureFn>
AdvantageResult compute_advantages(const std::vector<std::vector<double>>& reward_sequences,
                                   const LinearBaseline& baseline, double gamma, const FeatureFn& feature_of) {
  AdvantageResult out;
  std::size_t total = 0;
  for (const auto& r : reward_sequences) total += r.size();
  out.advantages.reserve(total);
  out.returns.reserve(total);
  out.features.reserve(total);
  for (std::size_t traj = 0; traj < reward_sequences.size(); ++traj) {
    const auto returns = discounted_return(reward_sequences[traj], gamma);
    const std::size_t len = returns.size();
    for (std::size_t t = 0; t < len; ++t) {
      out.features.push_back(feature_of(traj, t));
      out.advantages.push_back(returns[t] - baseline.predict(out.features.back()));
      out.returns.push_back(returns[t]);
    }
  }
  out.advantages = normalize(out.advantages);
  return out;
}

}  // namespace skillrl

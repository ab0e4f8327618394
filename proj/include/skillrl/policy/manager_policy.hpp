#pragma once

#include <span>
#include <vector>

#include "skillrl/core/param_vector.hpp"
#include "skillrl/core/rng.hpp"
#include "skillrl/policy/categorical.hpp"
#include "skillrl/policy/mlp.hpp"

namespace skillrl {

// High-level policy over skills: MLP logits -> softmax over the K skills.
// Receives the full task observation (agent block plus sensors).
class ManagerPolicy {
 public:
  ManagerPolicy(int obs_dim, int skill_count, std::vector<int> hidden = {32, 32})
      : mlp_(obs_dim, MlpSpec{std::move(hidden), skill_count}), skill_count_(skill_count) {
    params_ = ParamVector(mlp_.shape_table());
  }

  int obs_dim() const { return mlp_.input_dim(); }
  int skill_count() const { return skill_count_; }
  int param_count() const { return params_.size(); }
  const Mlp& mlp() const { return mlp_; }
  ParamVector& params() { return params_; }
  const ParamVector& params() const { return params_; }

  void init(RngStream& rng) { mlp_.init_params(params_.values(), rng); }

  CategoricalDist forward(std::span<const double> obs, MlpWorkspace& ws) const {
    return CategoricalDist::from_logits(mlp_.forward(params_.values(), obs, ws));
  }

  CategoricalDist forward(std::span<const double> obs) const {
    MlpWorkspace ws;
    return forward(obs, ws);
  }

  // grad += weight * d log pi(k | obs) / d params for the cached forward.
  void accumulate_logprob_grad(const MlpWorkspace& ws, int k, double weight, std::span<double> grad) const {
    const auto dist = CategoricalDist::from_logits(ws.act.back());
    std::vector<double> d_logits = dist.probs();
    for (auto& p : d_logits) p = -p;
    d_logits[k] += 1.0;
    mlp_.backward(params_.values(), ws, d_logits, grad, weight);
  }

 private:
  Mlp mlp_;
  int skill_count_;
  ParamVector params_;
};

}  // namespace skillrl

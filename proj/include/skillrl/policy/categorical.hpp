#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/rng.hpp"

namespace skillrl {

// Categorical distribution from logits via a stable softmax.
struct CategoricalDist {
  std::vector<double> log_probs;

  static CategoricalDist from_logits(std::span<const double> logits) {
    if (logits.empty()) fail_invalid("CategoricalDist: empty logits");
    double mx = logits[0];
    for (double l : logits) {
      if (!std::isfinite(l)) fail_invalid("CategoricalDist: non-finite logit");
      mx = std::max(mx, l);
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l - mx);
    const double log_z = mx + std::log(z);
    CategoricalDist d;
    d.log_probs.reserve(logits.size());
    for (double l : logits) d.log_probs.push_back(l - log_z);
    return d;
  }

  int size() const { return static_cast<int>(log_probs.size()); }

  std::vector<double> probs() const {
    std::vector<double> p(log_probs.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
    return p;
  }

  double log_prob(int k) const {
    if (k < 0 || k >= size()) fail_invalid("CategoricalDist::log_prob: index ", k, " outside [0,", size(), ")");
    return log_probs[k];
  }

  int sample(RngStream& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int k = 0; k < size(); ++k) {
      acc += std::exp(log_probs[k]);
      if (u < acc) return k;
    }
    return size() - 1;
  }
};

inline double categorical_kl(const CategoricalDist& old_dist, const CategoricalDist& new_dist) {
  if (old_dist.size() != new_dist.size())
    fail_invalid("categorical_kl: sizes ", old_dist.size(), " vs ", new_dist.size());
  double kl = 0.0;
  for (int k = 0; k < old_dist.size(); ++k)
    kl += std::exp(old_dist.log_probs[k]) * (old_dist.log_probs[k] - new_dist.log_probs[k]);
  return std::max(kl, 0.0);
}

}  // namespace skillrl

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/rng.hpp"

namespace skillrl {

inline constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))

// Diagonal Gaussian over actions; log_std is state-independent.
struct GaussianActionDist {
  std::vector<double> mean;
  std::vector<double> log_std;

  int dim() const { return static_cast<int>(mean.size()); }

  void validate() const {
    if (mean.size() != log_std.size())
      fail_invalid("GaussianActionDist: mean dim ", mean.size(), " != log_std dim ", log_std.size());
    for (double m : mean)
      if (!std::isfinite(m)) fail_invalid("GaussianActionDist: non-finite mean");
    for (double s : log_std)
      if (!std::isfinite(s)) fail_invalid("GaussianActionDist: non-finite log_std");
  }

  double log_prob(std::span<const double> action) const {
    if (static_cast<int>(action.size()) != dim())
      fail_invalid("log_prob: action dim ", action.size(), " != ", dim());
    double lp = 0.0;
    for (int i = 0; i < dim(); ++i) {
      if (!std::isfinite(action[i])) fail_invalid("log_prob: non-finite action component ", i);
      const double sd = std::exp(log_std[i]);
      const double z = (action[i] - mean[i]) / sd;
      lp += -0.5 * z * z - log_std[i] - kLogSqrt2Pi;
    }
    return lp;
  }

  double entropy() const {
    double h = 0.0;
    for (double ls : log_std) h += ls + 0.5 * (1.0 + std::log(2.0 * std::numbers::pi));
    return h;
  }

  std::vector<double> sample(RngStream& rng) const {
    std::vector<double> a(mean.size());
    for (int i = 0; i < dim(); ++i) a[i] = mean[i] + std::exp(log_std[i]) * rng.normal();
    return a;
  }
};

// Closed-form KL(old || new) for diagonal Gaussians.
inline double gaussian_kl(const GaussianActionDist& old_dist, const GaussianActionDist& new_dist) {
  if (old_dist.dim() != new_dist.dim())
    fail_invalid("gaussian_kl: dims ", old_dist.dim(), " vs ", new_dist.dim());
  old_dist.validate();
  new_dist.validate();
  double kl = 0.0;
  for (int i = 0; i < old_dist.dim(); ++i) {
    const double lso = old_dist.log_std[i], lsn = new_dist.log_std[i];
    const double vo = std::exp(2.0 * lso), vn = std::exp(2.0 * lsn);
    const double dm = old_dist.mean[i] - new_dist.mean[i];
    kl += lsn - lso + (vo + dm * dm) / (2.0 * vn) - 0.5;
  }
  return kl;
}

}  // namespace skillrl

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"

namespace skillrl {

// Per-timestep discounted suffix sums: out[t] = r[t] + gamma * out[t+1].
inline std::vector<double> discounted_return(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail_invalid("discounted_return: gamma ", gamma, " outside [0,1]");
  for (std::size_t t = 0; t < rewards.size(); ++t)
    if (!std::isfinite(rewards[t])) fail_invalid("discounted_return: non-finite reward at timestep ", t);
  std::vector<double> out(rewards.size());
  double acc = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    acc = rewards[i] + gamma * acc;
    out[i] = acc;
  }
  return out;
}

// Standardize to mean 0, population std 1. Degenerate inputs map to zeros.
inline std::vector<double> normalize(std::span<const double> values) {
  if (values.size() < 2) fail_invalid("normalize: need at least 2 values, got ", values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  const double sd = std::sqrt(var);
  std::vector<double> out(values.size());
  if (sd < 1e-8) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) / sd;
  return out;
}

}  // namespace skillrl

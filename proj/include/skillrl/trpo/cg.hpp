#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "skillrl/core/errors.hpp"

namespace skillrl {

struct CgResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Conjugate gradient for a symmetric positive-definite operator.
inline CgResult conjugate_gradient(const std::function<std::vector<double>(const std::vector<double>&)>& op,
                                   const std::vector<double>& b, int max_iters, double tol = 1e-10) {
  if (max_iters < 1) fail_invalid("conjugate_gradient: max_iters ", max_iters, " must be >= 1");
  const std::size_t n = b.size();
  std::vector<double> x(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> p = b;
  double rr = 0.0;
  for (double v : r) rr += v * v;
  const double b_norm = std::sqrt(rr);
  int it = 0;
  for (; it < max_iters && rr > tol * tol; ++it) {
    const std::vector<double> ap = op(p);
    double p_ap = 0.0;
    for (std::size_t i = 0; i < n; ++i) p_ap += p[i] * ap[i];
    if (!std::isfinite(p_ap) || p_ap <= 0.0)
      fail_runtime("conjugate_gradient: non-finite or non-positive curvature ", p_ap, " at iteration ", it);
    const double alpha = rr / p_ap;
    double rr_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rr_next += r[i] * r[i];
    }
    if (!std::isfinite(rr_next)) fail_runtime("conjugate_gradient: non-finite residual at iteration ", it);
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  (void)b_norm;
  return {std::move(x), std::sqrt(rr), it};
}

}  // namespace skillrl

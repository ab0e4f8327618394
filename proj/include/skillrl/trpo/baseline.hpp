#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "skillrl/core/errors.hpp"

namespace skillrl {

// Symmetric positive-definite solve via Cholesky; A is n x n row-major and
// gets overwritten. Small systems only (baseline features, test oracles).
inline std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        sum -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
      if (i == j) {
        if (sum <= 0.0) fail_runtime("cholesky_solve: matrix not positive definite at pivot ", i);
        a[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
      } else {
        a[static_cast<std::size_t>(i) * n + j] = sum / a[static_cast<std::size_t>(j) * n + j];
      }
    }
  }
  for (int i = 0; i < n; ++i) {  // forward substitution
    double sum = b[i];
    for (int k = 0; k < i; ++k) sum -= a[static_cast<std::size_t>(i) * n + k] * b[k];
    b[i] = sum / a[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {  // back substitution
    double sum = b[i];
    for (int k = i + 1; k < n; ++k) sum -= a[static_cast<std::size_t>(k) * n + i] * b[k];
    b[i] = sum / a[static_cast<std::size_t>(i) * n + i];
  }
  return b;
}

// Ridge-regularized linear value baseline over hand-crafted features:
// [obs..., obs^2..., t/H, (t/H)^2, (t/H)^3, 1]. Fitted to discounted returns
// with normal equations; predicts 0 until first fitted (fit-before-use:
// advantages are computed with the previous iteration's coefficients).
class LinearBaseline {
 public:
  static std::vector<double> features(std::span<const double> obs, double t_frac) {
    std::vector<double> f;
    f.reserve(2 * obs.size() + 4);
    for (double o : obs) f.push_back(o);
    for (double o : obs) f.push_back(o * o);
    f.push_back(t_frac);
    f.push_back(t_frac * t_frac);
    f.push_back(t_frac * t_frac * t_frac);
    f.push_back(1.0);
    return f;
  }

  bool fitted() const { return !coef_.empty(); }

  double predict(std::span<const double> feature_row) const {
    if (coef_.empty()) return 0.0;
    if (feature_row.size() != coef_.size())
      fail_invalid("LinearBaseline::predict: feature dim ", feature_row.size(), " != fitted dim ", coef_.size());
    double y = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i) y += coef_[i] * feature_row[i];
    return y;
  }

  void fit(const std::vector<std::vector<double>>& rows, std::span<const double> targets, double ridge = 1e-5) {
    if (rows.empty()) fail_invalid("LinearBaseline::fit: empty batch");
    if (rows.size() != targets.size())
      fail_invalid("LinearBaseline::fit: ", rows.size(), " rows vs ", targets.size(), " targets");
    const int d = static_cast<int>(rows.front().size());
    std::vector<double> gram(static_cast<std::size_t>(d) * d, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(d), 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& x = rows[r];
      if (static_cast<int>(x.size()) != d) fail_invalid("LinearBaseline::fit: ragged feature rows");
      for (int i = 0; i < d; ++i) {
        rhs[i] += x[i] * targets[r];
        for (int j = 0; j <= i; ++j) gram[static_cast<std::size_t>(i) * d + j] += x[i] * x[j];
      }
    }
    for (int i = 0; i < d; ++i) {
      gram[static_cast<std::size_t>(i) * d + i] += ridge;
      for (int j = i + 1; j < d; ++j)
        gram[static_cast<std::size_t>(i) * d + j] = gram[static_cast<std::size_t>(j) * d + i];
    }
    coef_ = cholesky_solve(std::move(gram), rhs, d);
  }

  const std::vector<double>& coefficients() const { return coef_; }

 private:
  std::vector<double> coef_;
};

}  // namespace skillrl

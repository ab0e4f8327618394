#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/core/param_vector.hpp"
#include "skillrl/core/rng.hpp"

namespace skillrl {

// Feed-forward architecture description: tanh hidden layers, linear output.
struct MlpSpec {
  std::vector<int> hidden{32, 32};
  int output_dim = 0;

  void validate() const {
    if (hidden.empty()) fail_invalid("MlpSpec: need at least one hidden layer");
    for (int h : hidden)
      if (h < 1) fail_invalid("MlpSpec: hidden size ", h, " must be >= 1");
    if (output_dim < 1) fail_invalid("MlpSpec: output_dim ", output_dim, " must be >= 1");
  }
};

// Per-sample activation cache. act[0] is the input, act[l] the post-tanh
// output of hidden layer l, act[depth] the linear output.
struct MlpWorkspace {
  std::vector<std::vector<double>> act;
  std::vector<double> scratch_a;
  std::vector<double> scratch_b;
};

// Dense tanh MLP over an externally owned flat parameter span.
// Layout per layer: weight matrix (out x in, row-major) then bias.
// Forward, reverse-mode (vector-Jacobian) and forward-mode (Jacobian-vector)
// passes are all exact; everything the trust-region optimizer needs.
class Mlp {
 public:
  Mlp(int input_dim, MlpSpec spec) : spec_(std::move(spec)) {
    if (input_dim < 1) fail_invalid("Mlp: input_dim ", input_dim, " must be >= 1");
    spec_.validate();
    sizes_.push_back(input_dim);
    sizes_.insert(sizes_.end(), spec_.hidden.begin(), spec_.hidden.end());
    sizes_.push_back(spec_.output_dim);
    int off = 0;
    for (int l = 0; l + 1 < static_cast<int>(sizes_.size()); ++l) {
      w_off_.push_back(off);
      off += sizes_[l + 1] * sizes_[l];
      b_off_.push_back(off);
      off += sizes_[l + 1];
    }
    param_count_ = off;
  }

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int param_count() const { return param_count_; }
  int depth() const { return static_cast<int>(sizes_.size()) - 1; }
  const MlpSpec& spec() const { return spec_; }
  const std::vector<int>& sizes() const { return sizes_; }

  std::vector<ShapeEntry> shape_table() const {
    std::vector<ShapeEntry> table;
    for (int l = 0; l < depth(); ++l) {
      table.push_back({concat("layer", l, "/W"), {sizes_[l + 1], sizes_[l]}});
      table.push_back({concat("layer", l, "/b"), {sizes_[l + 1]}});
    }
    return table;
  }

  // Uniform(-sqrt(6/(fan_in+fan_out))) weights, zero biases.
  void init_params(std::span<double> params, RngStream& rng) const {
    check_params(params);
    for (int l = 0; l < depth(); ++l) {
      const double bound = std::sqrt(6.0 / (sizes_[l] + sizes_[l + 1]));
      for (int i = 0; i < sizes_[l + 1] * sizes_[l]; ++i) params[w_off_[l] + i] = rng.uniform(-bound, bound);
      for (int i = 0; i < sizes_[l + 1]; ++i) params[b_off_[l] + i] = 0.0;
    }
  }

  void init_workspace(MlpWorkspace& ws) const {
    ws.act.resize(sizes_.size());
    for (std::size_t l = 0; l < sizes_.size(); ++l) ws.act[l].resize(sizes_[l]);
    int widest = 0;
    for (int s : sizes_) widest = std::max(widest, s);
    ws.scratch_a.resize(widest);
    ws.scratch_b.resize(widest);
  }

  std::span<const double> forward(std::span<const double> params, std::span<const double> input,
                                  MlpWorkspace& ws) const {
    check_params(params);
    if (static_cast<int>(input.size()) != input_dim())
      fail_invalid("Mlp::forward: input dim ", input.size(), " != ", input_dim());
    if (ws.act.size() != sizes_.size()) init_workspace(ws);
    std::copy(input.begin(), input.end(), ws.act[0].begin());
    for (int l = 0; l < depth(); ++l) {
      const double* W = params.data() + w_off_[l];
      const double* b = params.data() + b_off_[l];
      const auto& in = ws.act[l];
      auto& out = ws.act[l + 1];
      const int rows = sizes_[l + 1], cols = sizes_[l];
      for (int r = 0; r < rows; ++r) {
        double acc = b[r];
        const double* w_row = W + r * cols;
        for (int c = 0; c < cols; ++c) acc += w_row[c] * in[c];
        out[r] = (l < depth() - 1) ? std::tanh(acc) : acc;
      }
    }
    return ws.act.back();
  }

  // Accumulates weight * d(output)/d(params) contracted with d_output into
  // grad. Requires the workspace of a prior forward at the same params.
  void backward(std::span<const double> params, const MlpWorkspace& ws, std::span<const double> d_output,
                std::span<double> grad, double weight = 1.0) const {
    check_params(params);
    if (static_cast<int>(grad.size()) != param_count_)
      fail_invalid("Mlp::backward: grad size ", grad.size(), " != ", param_count_);
    auto& cur = const_cast<MlpWorkspace&>(ws).scratch_a;
    auto& prev = const_cast<MlpWorkspace&>(ws).scratch_b;
    for (int i = 0; i < output_dim(); ++i) cur[i] = weight * d_output[i];
    for (int l = depth() - 1; l >= 0; --l) {
      const double* W = params.data() + w_off_[l];
      const auto& in = ws.act[l];
      const int rows = sizes_[l + 1], cols = sizes_[l];
      double* dW = grad.data() + w_off_[l];
      double* db = grad.data() + b_off_[l];
      for (int r = 0; r < rows; ++r) {
        const double d = cur[r];
        db[r] += d;
        double* dw_row = dW + r * cols;
        for (int c = 0; c < cols; ++c) dw_row[c] += d * in[c];
      }
      if (l == 0) break;
      for (int c = 0; c < cols; ++c) prev[c] = 0.0;
      for (int r = 0; r < rows; ++r) {
        const double d = cur[r];
        const double* w_row = W + r * cols;
        for (int c = 0; c < cols; ++c) prev[c] += w_row[c] * d;
      }
      // through tanh of the previous hidden layer
      for (int c = 0; c < cols; ++c) prev[c] *= 1.0 - in[c] * in[c];
      std::swap(cur, prev);
    }
  }

  // Directional derivative of the output along a parameter tangent.
  void jvp(std::span<const double> params, std::span<const double> tangent, const MlpWorkspace& ws,
           std::span<double> d_output) const {
    check_params(params);
    if (static_cast<int>(tangent.size()) != param_count_)
      fail_invalid("Mlp::jvp: tangent size ", tangent.size(), " != ", param_count_);
    auto& cur = const_cast<MlpWorkspace&>(ws).scratch_a;
    auto& next = const_cast<MlpWorkspace&>(ws).scratch_b;
    for (int l = 0; l < depth(); ++l) {
      const double* W = params.data() + w_off_[l];
      const double* tW = tangent.data() + w_off_[l];
      const double* tb = tangent.data() + b_off_[l];
      const auto& in = ws.act[l];
      const auto& out = ws.act[l + 1];
      const int rows = sizes_[l + 1], cols = sizes_[l];
      for (int r = 0; r < rows; ++r) {
        double acc = tb[r];
        const double* tw_row = tW + r * cols;
        for (int c = 0; c < cols; ++c) acc += tw_row[c] * in[c];
        if (l > 0) {
          const double* w_row = W + r * cols;
          for (int c = 0; c < cols; ++c) acc += w_row[c] * cur[c];
        }
        next[r] = (l < depth() - 1) ? acc * (1.0 - out[r] * out[r]) : acc;
      }
      std::swap(cur, next);
    }
    for (int i = 0; i < output_dim(); ++i) d_output[i] = cur[i];
  }

 private:
  void check_params(std::span<const double> params) const {
    if (static_cast<int>(params.size()) < param_count_)
      fail_invalid("Mlp: parameter span has ", params.size(), " values, need ", param_count_);
  }

  MlpSpec spec_;
  std::vector<int> sizes_;
  std::vector<int> w_off_, b_off_;
  int param_count_ = 0;
};

}  // namespace skillrl

#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "skillrl/analysis/learning_curve.hpp"
#include "skillrl/trpo/trpo.hpp"

namespace skillrl {

// Per-iteration optimizer diagnostics row. Schema is shared with the
// learning-curve aggregator.
inline void write_progress_header(std::ostream& os) {
  const auto& schema = progress_schema();
  for (std::size_t i = 0; i < schema.size(); ++i) os << (i ? "," : "") << schema[i];
  os << "\n";
}

inline void write_progress_row(std::ostream& os, int iteration, double mean_return, const TrpoDiagnostics& d) {
  os.precision(17);
  os << iteration << "," << mean_return << "," << d.surrogate_after << "," << d.kl << "," << d.step_norm << ","
     << d.backtracks << "," << d.cg_residual << "\n";
}

class ProgressWriter {
 public:
  explicit ProgressWriter(const std::string& path) : os_(path) {
    if (!os_) fail_runtime("ProgressWriter: cannot open '", path, "'");
    write_progress_header(os_);
  }

  void row(int iteration, double mean_return, const TrpoDiagnostics& d) {
    write_progress_row(os_, iteration, mean_return, d);
    os_.flush();
  }

 private:
  std::ofstream os_;
};

}  // namespace skillrl

#pragma once

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "skillrl/core/errors.hpp"
#include "skillrl/io/csv.hpp"

namespace skillrl {

inline const std::vector<std::string>& progress_schema() {
  static const std::vector<std::string> schema{"iteration", "mean_return", "surrogate",  "kl",
                                               "step_norm", "backtracks",  "residual"};
  return schema;
}

struct LearningCurve {
  std::vector<int> iterations;
  std::vector<double> mean;
  std::vector<double> stddev;  // population convention
};

// Per-iteration mean and standard deviation of one progress column across
// runs. Shorter runs are padded with their last observed value.
inline LearningCurve learning_curve(const std::vector<std::string>& csv_paths,
                                    const std::string& column = "mean_return") {
  if (csv_paths.empty()) fail_invalid("learning_curve: no input files");
  std::vector<std::vector<double>> runs;
  for (const auto& path : csv_paths) {
    std::ifstream is(path);
    if (!is) fail_runtime("learning_curve: cannot open '", path, "'");
    const CsvTable table = read_csv(is);
    const auto& schema = progress_schema();
    if (table.header.size() != schema.size()) fail_runtime("learning_curve: '", path, "' has wrong column count");
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (table.header[i] != schema[i])
        fail_runtime("learning_curve: '", path, "' schema mismatch at column '", table.header[i], "' (expected '",
                     schema[i], "')");
    const int col = table.column(column);
    if (col < 0) fail_runtime("learning_curve: no column named '", column, "'");
    std::vector<double> series;
    series.reserve(table.rows.size());
    for (const auto& row : table.rows) series.push_back(csv_double(row[static_cast<std::size_t>(col)]));
    if (series.empty()) fail_runtime("learning_curve: '", path, "' has no rows");
    runs.push_back(std::move(series));
  }
  std::size_t longest = 0;
  for (const auto& r : runs) longest = std::max(longest, r.size());
  LearningCurve curve;
  for (std::size_t it = 0; it < longest; ++it) {
    double m = 0.0;
    for (const auto& r : runs) m += (it < r.size()) ? r[it] : r.back();
    m /= static_cast<double>(runs.size());
    double var = 0.0;
    for (const auto& r : runs) {
      const double v = (it < r.size()) ? r[it] : r.back();
      var += (v - m) * (v - m);
    }
    var /= static_cast<double>(runs.size());
    curve.iterations.push_back(static_cast<int>(it));
    curve.mean.push_back(m);
    curve.stddev.push_back(std::sqrt(var));
  }
  return curve;
}

inline void learning_curve_to_csv(std::ostream& os, const LearningCurve& curve) {
  os << "iteration,mean,std\n";
  os.precision(17);
  for (std::size_t i = 0; i < curve.iterations.size(); ++i)
    os << curve.iterations[i] << "," << curve.mean[i] << "," << curve.stddev[i] << "\n";
}

}  // namespace skillrl

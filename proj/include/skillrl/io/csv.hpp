#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "skillrl/core/errors.hpp"

namespace skillrl {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) fail_runtime("read_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_csv_line(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != table.header.size())
      fail_runtime("read_csv: row with ", row.size(), " fields, header has ", table.header.size());
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline double csv_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) fail_runtime("csv: '", s, "' is not a number");
  return v;
}

inline int csv_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) fail_runtime("csv: '", s, "' is not an integer");
  return v;
}

}  // namespace skillrl

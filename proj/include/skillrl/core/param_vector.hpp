#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skillrl/core/errors.hpp"

namespace skillrl {

struct ShapeEntry {
  std::string name;
  std::vector<int> dims;

  int size() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
  }
};

// Flat parameter vector with a named shape table describing the unflattened
// layout. Blocks are stored contiguously in table order.
class ParamVector {
 public:
  ParamVector() = default;

  explicit ParamVector(std::vector<ShapeEntry> table) : table_(std::move(table)) {
    offsets_.reserve(table_.size());
    int off = 0;
    for (const auto& e : table_) {
      for (int d : e.dims) {
        if (d <= 0) fail_invalid("ParamVector: block '", e.name, "' has non-positive dim ", d);
      }
      offsets_.push_back(off);
      off += e.size();
    }
    values_.assign(static_cast<size_t>(off), 0.0);
  }

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const std::vector<ShapeEntry>& shape_table() const { return table_; }

  std::span<double> block(int index) {
    return std::span<double>(values_).subspan(static_cast<size_t>(offsets_[index]),
                                              static_cast<size_t>(table_[index].size()));
  }
  std::span<const double> block(int index) const {
    return std::span<const double>(values_).subspan(static_cast<size_t>(offsets_[index]),
                                                    static_cast<size_t>(table_[index].size()));
  }

  std::span<double> block(const std::string& name) { return block(index_of(name)); }
  std::span<const double> block(const std::string& name) const { return block(index_of(name)); }

  int offset_of(const std::string& name) const { return offsets_[index_of(name)]; }

  void set_values(std::span<const double> v) {
    if (static_cast<int>(v.size()) != size())
      fail_invalid("ParamVector: expected ", size(), " values, got ", v.size());
    values_.assign(v.begin(), v.end());
  }

  // Named blocks in table order; inverse of flatten.
  std::vector<std::pair<std::string, std::vector<double>>> unflatten() const {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    out.reserve(table_.size());
    for (size_t i = 0; i < table_.size(); ++i) {
      auto b = block(static_cast<int>(i));
      out.emplace_back(table_[i].name, std::vector<double>(b.begin(), b.end()));
    }
    return out;
  }

  static ParamVector flatten(std::vector<ShapeEntry> table,
                             const std::vector<std::pair<std::string, std::vector<double>>>& blocks) {
    ParamVector pv(std::move(table));
    if (blocks.size() != pv.table_.size())
      fail_invalid("ParamVector::flatten: ", blocks.size(), " blocks for ", pv.table_.size(), " entries");
    for (size_t i = 0; i < blocks.size(); ++i) {
      const auto& [name, vals] = blocks[i];
      if (name != pv.table_[i].name)
        fail_invalid("ParamVector::flatten: block '", name, "' does not match table entry '", pv.table_[i].name, "'");
      if (static_cast<int>(vals.size()) != pv.table_[i].size())
        fail_invalid("ParamVector::flatten: block '", name, "' has ", vals.size(), " values, expected ",
                     pv.table_[i].size());
      std::copy(vals.begin(), vals.end(), pv.block(static_cast<int>(i)).begin());
    }
    return pv;
  }

 private:
  int index_of(const std::string& name) const {
    for (size_t i = 0; i < table_.size(); ++i)
      if (table_[i].name == name) return static_cast<int>(i);
    fail_invalid("ParamVector: no block named '", name, "'");
  }

  std::vector<ShapeEntry> table_;
  std::vector<int> offsets_;
  std::vector<double> values_;
};

}  // namespace skillrl

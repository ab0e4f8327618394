#pragma once

#include <unordered_set>
#include <vector>

#include "skillrl/analysis/visitation.hpp"
#include "skillrl/mi/visitation_grid.hpp"

namespace skillrl {

// Number of distinct grid cells touched by the records.
inline std::size_t coverage(const std::vector<VisitationRecord>& records, double mesh_density) {
  if (records.empty()) fail_invalid("coverage: no records");
  std::unordered_set<GridCell, GridCellHash> cells;
  cells.reserve(records.size() / 4);
  for (const auto& r : records) cells.insert(cell_of({r.x, r.y}, mesh_density));
  return cells.size();
}

}  // namespace skillrl

#pragma once

#include <vector>

namespace skillrl {

// Factored observation: the robot-intrinsic block shared across every task in
// an experiment, plus the task-specific sensor block. Concatenation order is
// fixed: agent first, then rest.
struct FactoredObservation {
  std::vector<double> agent;
  std::vector<double> rest;

  int agent_dim() const { return static_cast<int>(agent.size()); }
  int rest_dim() const { return static_cast<int>(rest.size()); }
  int dim() const { return agent_dim() + rest_dim(); }

  std::vector<double> full() const {
    std::vector<double> out;
    out.reserve(agent.size() + rest.size());
    out.insert(out.end(), agent.begin(), agent.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
};

}  // namespace skillrl

#pragma once

#include <string>
#include <vector>

#include "treesched/task_tree.hpp"

namespace treesched {

/// Start time and processor for every node of a tree.
struct Schedule {
  std::vector<double> start;
  std::vector<std::size_t> proc;
  std::size_t procs = 1;
  std::string heuristic;

  Schedule() = default;
  Schedule(std::size_t node_count, std::size_t procs, std::string heuristic)
      : start(node_count, 0.0), proc(node_count, 0), procs(procs), heuristic(std::move(heuristic)) {}

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

}  // namespace treesched

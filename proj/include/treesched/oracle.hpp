#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "treesched/generators.hpp"
#include "treesched/task_tree.hpp"

namespace treesched {

/// Lower bounds used to normalize heuristic results.
struct Bounds {
  /// max(sum w / p, weighted critical path)
  double makespan = 0.0;
  /// Peak of the best sequential postorder (a proxy; the true sequential
  /// optimum may be lower).
  double memory = 0.0;
};

Bounds lower_bounds(const TaskTree& tree, std::size_t procs);

struct ParetoPoint {
  double makespan = 0.0;
  double memory = 0.0;

  friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

/// Non-dominated points sorted by makespan ascending, memory strictly
/// descending.
struct ParetoFront {
  std::vector<ParetoPoint> points;
  /// False when a memory or makespan cap pruned the search: the points are
  /// then exact only inside the caps.
  bool exact = true;

  /// True if some point is <= `p` in both objectives.
  bool weakly_dominates(const ParetoPoint& p) const;
};

/// Keeps the non-dominated points, sorted.
std::vector<ParetoPoint> pareto_filter(std::vector<ParetoPoint> points);

class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleOptions {
  std::size_t node_limit = 14;
  /// Discard partial schedules whose peak exceeds the cap.
  std::optional<double> memory_cap;
  /// Discard partial schedules longer than the cap.
  std::optional<std::size_t> makespan_cap;
};

/// Exhaustive bi-objective search for pebble trees (unit times, unit outputs,
/// empty execution files) in unit time steps. States are completed sets up to
/// tree isomorphism; a state reached later with no better peak is dropped.
/// Throws OracleLimitError for non-pebble or oversized trees.
ParetoFront pareto_oracle(const TaskTree& tree, std::size_t procs, const OracleOptions& options = {});

/// Minimum peak over every topological order (memoized over completed sets).
/// Throws OracleLimitError beyond `node_limit` nodes.
double brute_force_sequential_memory(const TaskTree& tree, std::size_t node_limit = 10);

class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReductionCheck {
  bool within_bounds = false;
  double makespan = 0.0;
  double peak_memory = 0.0;
};

/// Builds the step schedule of the 3-Partition reduction for a given
/// partition (odd steps: all leaves under one triple; even steps: that
/// triple's three nodes; last step: the root), simulates it and compares
/// against the bounds. `triples` holds values of `a`, matched to indices in
/// order of appearance. Throws InvalidPartition if the triples do not form a
/// 3-partition of `a` with sums B.
ReductionCheck check_reduction_schedule(const TaskTree& tree, const ReductionBounds& bounds,
                                        std::span<const std::int64_t> a, std::int64_t b,
                                        std::span<const std::array<std::int64_t, 3>> triples);

}  // namespace treesched

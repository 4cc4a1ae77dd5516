#pragma once

#include <string>
#include <vector>

#include "treesched/schedule.hpp"
#include "treesched/task_tree.hpp"

namespace treesched {

struct TracePoint {
  double time = 0.0;
  double memory = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Order in which events sharing a timestamp are applied.
enum class TieRule {
  /// Finishing tasks release before starting tasks allocate. Default.
  kReleaseFirst,
  /// Starting tasks allocate first; the transient sum counts toward the peak.
  kAllocateFirst,
};

struct SimReport {
  bool feasible = true;
  /// First violated constraint when !feasible.
  std::string violation;
  double makespan = 0.0;
  double peak_memory = 0.0;
  /// Piecewise-constant memory: trace[k].memory holds on
  /// [trace[k].time, trace[k+1].time). The last point is the makespan, where
  /// only the root's output remains.
  std::vector<TracePoint> trace;
};

/// Checks precedence, processor exclusivity and processor range, then replays
/// the memory function: starting i allocates n_i + f_i; finishing i releases
/// n_i and the outputs of its children. The root's output is held until the
/// makespan. Zero-duration tasks occupy an empty interval and therefore never
/// show up in the sampled memory.
SimReport check_schedule(const TaskTree& tree, const Schedule& schedule, TieRule rule = TieRule::kReleaseFirst);

/// Breakpoints of the memory function (the trace of check_schedule).
std::vector<TracePoint> memory_trace(const TaskTree& tree, const Schedule& schedule);

}  // namespace treesched

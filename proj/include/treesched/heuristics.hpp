#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treesched/schedule.hpp"
#include "treesched/task_tree.hpp"
#include "treesched/traversal.hpp"

namespace treesched {

/// depth_i = w_i plus the processing times of all proper ancestors of i.
std::vector<double> weighted_depth(const TaskTree& tree);

/// Longest weighted root-to-leaf path (max of weighted_depth).
double critical_path(const TaskTree& tree);

enum class PolicyKind { kInnerFirst, kDeepestFirst };

/// Ready-queue ordering for list_schedule.
///
/// Inner-first: inner nodes before leaves; inner nodes by non-increasing edge
/// depth, then input-order position; leaves by input-order position.
///
/// Deepest-first: non-increasing weighted depth; then inner before leaf; then
/// input-order position.
struct PriorityPolicy {
  PolicyKind kind = PolicyKind::kInnerFirst;
  /// Sequential postorder used for tie-breaks (the order O).
  std::vector<NodeId> input_order;
  /// Only read by deepest-first; filled by the factory functions.
  std::vector<double> weighted_depth;

  static PriorityPolicy inner_first(const TaskTree& tree, std::vector<NodeId> order);
  static PriorityPolicy deepest_first(const TaskTree& tree, std::vector<NodeId> order);
};

/// Event-driven list scheduling. Leaves are ready at time 0; at each finish
/// time the newly ready parents join the queue, then idle processors (lowest
/// index first) take the highest-priority ready nodes.
Schedule list_schedule(const TaskTree& tree, std::size_t procs, const PriorityPolicy& policy);

Schedule par_inner_first(const TaskTree& tree, std::size_t procs);
Schedule par_deepest_first(const TaskTree& tree, std::size_t procs);

/// At most p maximal subtrees in parallel, one per processor, each in its
/// best postorder; the remaining nodes then run on processor 0 in the
/// whole-tree best postorder.
Schedule par_subtrees(const TaskTree& tree, std::size_t procs);

/// Same splitting, but every subtree is placed greedily (heaviest first) on
/// the least-loaded processor before the sequential tail runs on processor 0.
Schedule par_subtrees_optim(const TaskTree& tree, std::size_t procs);

/// One processor, best postorder.
Schedule seq_postorder(const TaskTree& tree);

enum class Heuristic { kParSubtrees, kParSubtreesOptim, kParInnerFirst, kParDeepestFirst, kSeqPostorder };

/// CLI spelling, e.g. "par-inner-first".
std::string_view heuristic_name(Heuristic h);
/// Throws std::invalid_argument on an unknown name.
Heuristic parse_heuristic(std::string_view name);
/// The four parallel heuristics.
std::span<const Heuristic> parallel_heuristics();

/// seq-postorder ignores `procs` and always uses one processor.
Schedule run_heuristic(Heuristic h, const TaskTree& tree, std::size_t procs);

}  // namespace treesched

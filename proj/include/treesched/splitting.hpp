#pragma once

#include <vector>

#include "treesched/task_tree.hpp"

namespace treesched {

/// Decomposition of a tree into at most p maximal subtrees processed in
/// parallel, surplus subtrees and split inner nodes processed sequentially.
struct Splitting {
  std::vector<NodeId> parallel_roots;
  std::vector<NodeId> surplus_roots;
  /// Split nodes in pop order.
  std::vector<NodeId> seq_set;
  double predicted_makespan = 0.0;
  /// Cost of every candidate step; step_costs[0] = W_root.
  std::vector<double> step_costs;
  std::size_t selected_step = 0;
};

/// W_i: total processing time of the subtree rooted at i.
std::vector<double> subtree_weights(const TaskTree& tree);

/// Repeatedly splits the heaviest subtree (queue ordered by non-increasing W,
/// then non-increasing w, then ascending id) until the head is a leaf. After
/// each split the candidate cost is
///   W(head) + sum of w over split nodes + sum of W beyond the p-th entry,
/// and the earliest step of minimum cost is selected.
Splitting split_subtrees(const TaskTree& tree, std::size_t procs);

}  // namespace treesched

#pragma once

#include <span>
#include <vector>

#include "treesched/task_tree.hpp"

namespace treesched {

/// A sequential postorder and its peak memory.
struct PostOrder {
  std::vector<NodeId> order;
  double peak = 0.0;
};

/// True iff `order` is a permutation in which every subtree is contiguous and
/// ends with its root.
bool is_postorder(const TaskTree& tree, std::span<const NodeId> order);

/// True iff `order` is a permutation listing every node after its children.
bool is_topological(const TaskTree& tree, std::span<const NodeId> order);

/// Peak memory of a one-processor execution in the given topological order.
/// While i runs, memory holds every retained output plus n_i + f_i; when i
/// completes its inputs and execution file are released.
/// Throws std::invalid_argument if the order is not topological.
double sequential_peak(const TaskTree& tree, std::span<const NodeId> order);

/// sequential_peak restricted to postorders (throws otherwise).
double postorder_peak(const TaskTree& tree, std::span<const NodeId> order);

/// Per-node peak of the memory-optimal postorder of each subtree.
///
/// Children are visited by non-increasing (subtree peak - output size), ties
/// by ascending id; for node i with children j_1..j_m in that order
///   M_i = max( max_k (sum_{l<k} f_{j_l} + M_{j_k}),  sum_j f_j + n_i + f_i ).
struct SubtreePeaks {
  std::vector<double> peak;
  std::vector<std::vector<NodeId>> child_order;
};
SubtreePeaks subtree_peaks(const TaskTree& tree);

/// Memory-optimal postorder of the whole tree.
PostOrder best_postorder(const TaskTree& tree);

/// Postorder of the subtree rooted at `top` following a per-node child order.
std::vector<NodeId> expand_postorder(const std::vector<std::vector<NodeId>>& child_order, NodeId top);

}  // namespace treesched

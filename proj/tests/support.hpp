#pragma once

// Test-only helpers and brute-force oracles. Nothing here calls into the
// code paths these oracles check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "treesched/task_tree.hpp"

namespace treesched::testing {

inline TaskTree single_node(double w, double n, double f) { return TaskTree({{kNoNode, w, n, f}}); }

/// Pebble chain: node 0 is the root, node k's parent is k-1.
inline TaskTree pebble_chain(std::size_t length) {
  std::vector<TaskTree::Node> nodes(length);
  for (std::size_t k = 0; k < length; ++k) nodes[k] = {k == 0 ? kNoNode : k - 1, 1.0, 0.0, 1.0};
  return TaskTree(std::move(nodes));
}

inline TaskTree unit_time_chain(std::size_t length) {
  std::vector<TaskTree::Node> nodes(length);
  for (std::size_t k = 0; k < length; ++k) nodes[k] = {k == 0 ? kNoNode : k - 1, 1.0, 2.0, 3.0};
  return TaskTree(std::move(nodes));
}

/// Peak of executing `order` on one processor, straight from the model: while
/// a node runs, memory holds all outputs produced so far whose consumer has
/// not finished, plus the node's execution file and output.
inline double naive_sequential_peak(const TaskTree& t, const std::vector<NodeId>& order) {
  std::vector<bool> finished(t.size(), false);
  double peak = 0.0;
  for (NodeId i : order) {
    double mem = t.exec_size(i) + t.out_size(i);
    for (NodeId j = 0; j < t.size(); ++j) {
      const NodeId p = t.parent(j);
      if (finished[j] && p != kNoNode && !finished[p]) mem += t.out_size(j);
    }
    peak = std::max(peak, mem);
    finished[i] = true;
  }
  return peak;
}

/// Minimum peak over every postorder (all child permutations at every node).
inline double min_peak_over_postorders(const TaskTree& t) {
  std::vector<std::vector<NodeId>> perm(t.size());
  for (NodeId i = 0; i < t.size(); ++i) perm[i] = t.children(i);  // ascending: first permutation
  std::vector<NodeId> inner;
  for (NodeId i = 0; i < t.size(); ++i) {
    if (perm[i].size() > 1) inner.push_back(i);
  }
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<NodeId> order;
    std::function<void(NodeId)> visit = [&](NodeId i) {
      for (NodeId c : perm[i]) visit(c);
      order.push_back(i);
    };
    visit(t.root());
    best = std::min(best, naive_sequential_peak(t, order));
    // odometer over the per-node permutations
    std::size_t k = 0;
    while (k < inner.size() && !std::next_permutation(perm[inner[k]].begin(), perm[inner[k]].end())) ++k;
    if (k == inner.size()) break;
  }
  return best;
}

/// Best makespan over every splitting into maximal subtrees: the split set is
/// any ancestor-closed node set (possibly empty), its members run
/// sequentially, the p heaviest resulting subtrees run in parallel and the
/// rest run sequentially.
inline double best_splitting_cost(const TaskTree& t, std::size_t p) {
  const std::size_t n = t.size();
  std::vector<double> weight(n, 0.0);
  std::function<double(NodeId)> fill = [&](NodeId i) {
    double s = t.time(i);
    for (NodeId c : t.children(i)) s += fill(c);
    return weight[i] = s;
  };
  fill(t.root());

  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool closed = true;
    for (NodeId i = 0; i < n && closed; ++i) {
      const NodeId par = t.parent(i);
      if ((mask >> i & 1) && par != kNoNode && !(mask >> par & 1)) closed = false;
    }
    if (!closed) continue;
    double seq = 0.0;
    std::vector<double> subtrees;
    if (mask == 0) subtrees.push_back(weight[t.root()]);
    for (NodeId i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      seq += t.time(i);
      for (NodeId c : t.children(i)) {
        if (!(mask >> c & 1)) subtrees.push_back(weight[c]);
      }
    }
    std::sort(subtrees.rbegin(), subtrees.rend());
    double parallel = subtrees.empty() ? 0.0 : subtrees.front();
    for (std::size_t k = p; k < subtrees.size(); ++k) seq += subtrees[k];
    best = std::min(best, parallel + seq);
  }
  return best;
}

/// Sum over nodes of resident size x residency time: n_i over its run, f_i
/// from its start until its parent finishes (the makespan for the root).
inline double resident_byte_time(const TaskTree& t, const std::vector<double>& start, double makespan) {
  double total = 0.0;
  for (NodeId i = 0; i < t.size(); ++i) {
    total += t.exec_size(i) * t.time(i);
    const NodeId p = t.parent(i);
    const double release = p == kNoNode ? makespan : start[p] + t.time(p);
    total += t.out_size(i) * (release - start[i]);
  }
  return total;
}

}  // namespace treesched::testing

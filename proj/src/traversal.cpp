#include "treesched/traversal.hpp"

#include <algorithm>
#include <stdexcept>

namespace treesched {

namespace {

// position[i] of each node, or an empty vector if `order` is not a permutation.
std::vector<std::size_t> positions(const TaskTree& tree, std::span<const NodeId> order) {
  const std::size_t n = tree.size();
  if (order.size() != n) return {};
  std::vector<std::size_t> pos(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || pos[order[k]] != n) return {};
    pos[order[k]] = k;
  }
  return pos;
}

}  // namespace

bool is_topological(const TaskTree& tree, std::span<const NodeId> order) {
  const auto pos = positions(tree, order);
  if (pos.empty()) return false;
  for (NodeId i = 0; i < tree.size(); ++i) {
    if (tree.parent(i) != kNoNode && pos[i] > pos[tree.parent(i)]) return false;
  }
  return true;
}

bool is_postorder(const TaskTree& tree, std::span<const NodeId> order) {
  const auto pos = positions(tree, order);
  if (pos.empty()) return false;
  // Subtree i occupies [pos_i - size_i + 1, pos_i] iff its minimum position is
  // exactly that and the root comes last.
  std::vector<std::size_t> size(tree.size(), 1), lo(pos), hi(pos);
  for (NodeId i : tree.bottom_up()) {
    if (hi[i] != pos[i] || hi[i] - lo[i] + 1 != size[i]) return false;
    const NodeId p = tree.parent(i);
    if (p == kNoNode) continue;
    size[p] += size[i];
    lo[p] = std::min(lo[p], lo[i]);
    hi[p] = std::max(hi[p], hi[i]);
  }
  return true;
}

double sequential_peak(const TaskTree& tree, std::span<const NodeId> order) {
  if (!is_topological(tree, order)) throw std::invalid_argument("order is not a topological order of the tree");
  double resident = 0.0;
  double peak = 0.0;
  for (NodeId i : order) {
    peak = std::max(peak, resident + tree.exec_size(i) + tree.out_size(i));
    resident += tree.out_size(i);
    for (NodeId c : tree.children(i)) resident -= tree.out_size(c);
  }
  return peak;
}

double postorder_peak(const TaskTree& tree, std::span<const NodeId> order) {
  if (!is_postorder(tree, order)) throw std::invalid_argument("order is not a postorder of the tree");
  return sequential_peak(tree, order);
}

SubtreePeaks subtree_peaks(const TaskTree& tree) {
  SubtreePeaks out;
  out.peak.assign(tree.size(), 0.0);
  out.child_order.resize(tree.size());
  for (NodeId i : tree.bottom_up()) {
    auto& kids = out.child_order[i];
    kids = tree.children(i);
    std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
      const double ka = out.peak[a] - tree.out_size(a);
      const double kb = out.peak[b] - tree.out_size(b);
      if (ka != kb) return ka > kb;
      return a < b;
    });
    double held = 0.0;
    double peak = 0.0;
    for (NodeId c : kids) {
      peak = std::max(peak, held + out.peak[c]);
      held += tree.out_size(c);
    }
    out.peak[i] = std::max(peak, held + tree.exec_size(i) + tree.out_size(i));
  }
  return out;
}

std::vector<NodeId> expand_postorder(const std::vector<std::vector<NodeId>>& child_order, NodeId top) {
  std::vector<NodeId> order;
  // (node, index of next child to visit)
  std::vector<std::pair<NodeId, std::size_t>> stack{{top, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < child_order[node].size()) {
      const NodeId child = child_order[node][next++];
      stack.emplace_back(child, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

PostOrder best_postorder(const TaskTree& tree) {
  SubtreePeaks peaks = subtree_peaks(tree);
  PostOrder out;
  out.order = expand_postorder(peaks.child_order, tree.root());
  // Replayed rather than taken from the recurrence so that the reported peak
  // is bit-identical to postorder_peak(order) for non-integral weights too.
  out.peak = sequential_peak(tree, out.order);
  return out;
}

}  // namespace treesched

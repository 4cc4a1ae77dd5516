#include "treesched/splitting.hpp"

#include <iterator>
#include <set>
#include <stdexcept>

namespace treesched {

std::vector<double> subtree_weights(const TaskTree& tree) {
  std::vector<double> weight(tree.size(), 0.0);
  for (NodeId i : tree.bottom_up()) {
    weight[i] += tree.time(i);
    if (tree.parent(i) != kNoNode) weight[tree.parent(i)] += weight[i];
  }
  return weight;
}

namespace {

class SplitQueue {
 public:
  SplitQueue(const TaskTree& tree, const std::vector<double>& weight)
      : tree_(tree), weight_(weight), queue_(Order{&tree, &weight}) {}

  void push(NodeId i) { queue_.insert(i); }
  NodeId head() const { return *queue_.begin(); }
  NodeId pop_head() {
    NodeId h = head();
    queue_.erase(queue_.begin());
    return h;
  }
  bool head_is_leaf() const { return !(weight_[head()] > tree_.time(head())); }

  // W(head) + sum of W over entries past the first `procs`.
  double parallel_plus_surplus(std::size_t procs) const {
    double cost = weight_[head()];
    std::size_t rank = 0;
    for (NodeId i : queue_) {
      if (rank++ >= procs) cost += weight_[i];
    }
    return cost;
  }

  std::vector<NodeId> entries() const { return {queue_.begin(), queue_.end()}; }

 private:
  struct Order {
    const TaskTree* tree;
    const std::vector<double>* weight;
    bool operator()(NodeId a, NodeId b) const {
      const double wa = (*weight)[a], wb = (*weight)[b];
      if (wa != wb) return wa > wb;
      const double ta = tree->time(a), tb = tree->time(b);
      if (ta != tb) return ta > tb;
      return a < b;
    }
  };

  const TaskTree& tree_;
  const std::vector<double>& weight_;
  std::set<NodeId, Order> queue_;
};

}  // namespace

Splitting split_subtrees(const TaskTree& tree, std::size_t procs) {
  if (procs == 0) throw std::invalid_argument("split_subtrees: need at least one processor");
  const std::vector<double> weight = subtree_weights(tree);

  Splitting out;
  SplitQueue queue(tree, weight);
  queue.push(tree.root());
  out.step_costs.push_back(weight[tree.root()]);

  std::vector<NodeId> popped;
  double seq_time = 0.0;
  while (!queue.head_is_leaf()) {
    const NodeId node = queue.pop_head();
    popped.push_back(node);
    seq_time += tree.time(node);
    for (NodeId c : tree.children(node)) queue.push(c);
    out.step_costs.push_back(queue.parallel_plus_surplus(procs) + seq_time);
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < out.step_costs.size(); ++s) {
    if (out.step_costs[s] < out.step_costs[best]) best = s;
  }
  out.selected_step = best;
  out.predicted_makespan = out.step_costs[best];

  // Replay the first `best` splits to recover the queue at that step.
  SplitQueue replay(tree, weight);
  replay.push(tree.root());
  for (std::size_t s = 0; s < best; ++s) {
    const NodeId node = replay.pop_head();
    out.seq_set.push_back(node);
    for (NodeId c : tree.children(node)) replay.push(c);
  }
  const std::vector<NodeId> entries = replay.entries();
  for (std::size_t r = 0; r < entries.size(); ++r) {
    (r < procs ? out.parallel_roots : out.surplus_roots).push_back(entries[r]);
  }
  return out;
}

}  // namespace treesched

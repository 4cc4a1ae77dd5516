#include "treesched/heuristics.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <stdexcept>

#include "treesched/splitting.hpp"

namespace treesched {

std::vector<double> weighted_depth(const TaskTree& tree) {
  std::vector<double> depth(tree.size(), 0.0);
  const auto& order = tree.bottom_up();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId i = *it;
    const NodeId p = tree.parent(i);
    depth[i] = tree.time(i) + (p == kNoNode ? 0.0 : depth[p]);
  }
  return depth;
}

double critical_path(const TaskTree& tree) {
  const auto depth = weighted_depth(tree);
  return *std::max_element(depth.begin(), depth.end());
}

PriorityPolicy PriorityPolicy::inner_first(const TaskTree& tree, std::vector<NodeId> order) {
  if (!is_postorder(tree, order)) throw std::invalid_argument("input order must be a postorder");
  return {PolicyKind::kInnerFirst, std::move(order), {}};
}

PriorityPolicy PriorityPolicy::deepest_first(const TaskTree& tree, std::vector<NodeId> order) {
  if (!is_postorder(tree, order)) throw std::invalid_argument("input order must be a postorder");
  return {PolicyKind::kDeepestFirst, std::move(order), treesched::weighted_depth(tree)};
}

Schedule list_schedule(const TaskTree& tree, std::size_t procs, const PriorityPolicy& policy) {
  if (procs == 0) throw std::invalid_argument("list_schedule: need at least one processor");
  const std::size_t n = tree.size();
  if (policy.input_order.size() != n) throw std::invalid_argument("list_schedule: input order size mismatch");
  if (policy.kind == PolicyKind::kDeepestFirst && policy.weighted_depth.size() != n) {
    throw std::invalid_argument("list_schedule: missing weighted depths");
  }

  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[policy.input_order[k]] = k;

  auto before = [&](NodeId a, NodeId b) {
    const bool leaf_a = tree.is_leaf(a), leaf_b = tree.is_leaf(b);
    if (policy.kind == PolicyKind::kInnerFirst) {
      if (leaf_a != leaf_b) return !leaf_a;
      if (!leaf_a && tree.depth(a) != tree.depth(b)) return tree.depth(a) > tree.depth(b);
    } else {
      const double da = policy.weighted_depth[a], db = policy.weighted_depth[b];
      if (da != db) return da > db;
      if (leaf_a != leaf_b) return !leaf_a;
    }
    return rank[a] < rank[b];
  };
  std::set<NodeId, decltype(before)> ready(before);

  using Finish = std::pair<double, NodeId>;
  std::priority_queue<Finish, std::vector<Finish>, std::greater<>> running;
  std::set<std::size_t> idle;
  for (std::size_t p = 0; p < procs; ++p) idle.insert(p);
  std::vector<std::size_t> pending(n);
  for (NodeId i = 0; i < n; ++i) {
    pending[i] = tree.children(i).size();
    if (pending[i] == 0) ready.insert(i);
  }

  Schedule schedule(n, procs, "");
  double now = 0.0;
  while (true) {
    while (!idle.empty() && !ready.empty()) {
      const NodeId node = *ready.begin();
      ready.erase(ready.begin());
      const std::size_t proc = *idle.begin();
      idle.erase(idle.begin());
      schedule.start[node] = now;
      schedule.proc[node] = proc;
      running.emplace(now + tree.time(node), node);
    }
    if (running.empty()) break;
    // Coalesce every completion at the next event time.
    now = running.top().first;
    while (!running.empty() && running.top().first == now) {
      const NodeId done = running.top().second;
      running.pop();
      idle.insert(schedule.proc[done]);
      const NodeId parent = tree.parent(done);
      if (parent != kNoNode && --pending[parent] == 0) ready.insert(parent);
    }
  }
  return schedule;
}

Schedule par_inner_first(const TaskTree& tree, std::size_t procs) {
  Schedule s = list_schedule(tree, procs, PriorityPolicy::inner_first(tree, best_postorder(tree).order));
  s.heuristic = heuristic_name(Heuristic::kParInnerFirst);
  return s;
}

Schedule par_deepest_first(const TaskTree& tree, std::size_t procs) {
  Schedule s = list_schedule(tree, procs, PriorityPolicy::deepest_first(tree, best_postorder(tree).order));
  s.heuristic = heuristic_name(Heuristic::kParDeepestFirst);
  return s;
}

namespace {

// Runs `nodes` back-to-back on `proc` from `t`; returns the finish time.
double run_sequence(const TaskTree& tree, Schedule& s, std::span<const NodeId> nodes, std::size_t proc, double t) {
  for (NodeId i : nodes) {
    s.start[i] = t;
    s.proc[i] = proc;
    t += tree.time(i);
  }
  return t;
}

// Whole-tree best postorder split into per-subtree blocks plus the rest.
struct PhasePlan {
  std::vector<std::vector<NodeId>> subtree_order;  // indexed like `roots`
  std::vector<NodeId> tail;
};

PhasePlan plan_phases(const TaskTree& tree, const std::vector<NodeId>& roots, const std::vector<NodeId>& order) {
  const std::size_t none = roots.size();
  std::vector<std::size_t> owner(tree.size(), none);
  for (std::size_t r = 0; r < roots.size(); ++r) owner[roots[r]] = r;
  // Top-down propagation of subtree ownership.
  const auto& up = tree.bottom_up();
  for (auto it = up.rbegin(); it != up.rend(); ++it) {
    const NodeId p = tree.parent(*it);
    if (owner[*it] == none && p != kNoNode) owner[*it] = owner[p];
  }
  PhasePlan plan;
  plan.subtree_order.resize(roots.size());
  for (NodeId i : order) {
    (owner[i] == none ? plan.tail : plan.subtree_order[owner[i]]).push_back(i);
  }
  return plan;
}

}  // namespace

Schedule par_subtrees(const TaskTree& tree, std::size_t procs) {
  const Splitting split = split_subtrees(tree, procs);
  const PostOrder post = best_postorder(tree);
  const PhasePlan plan = plan_phases(tree, split.parallel_roots, post.order);

  Schedule s(tree.size(), procs, std::string(heuristic_name(Heuristic::kParSubtrees)));
  double parallel_end = 0.0;
  for (std::size_t r = 0; r < split.parallel_roots.size(); ++r) {
    parallel_end = std::max(parallel_end, run_sequence(tree, s, plan.subtree_order[r], r, 0.0));
  }
  run_sequence(tree, s, plan.tail, 0, parallel_end);
  return s;
}

Schedule par_subtrees_optim(const TaskTree& tree, std::size_t procs) {
  const Splitting split = split_subtrees(tree, procs);
  const PostOrder post = best_postorder(tree);

  // parallel_roots then surplus_roots is already non-increasing W (queue order).
  std::vector<NodeId> roots = split.parallel_roots;
  roots.insert(roots.end(), split.surplus_roots.begin(), split.surplus_roots.end());
  const PhasePlan plan = plan_phases(tree, roots, post.order);

  Schedule s(tree.size(), procs, std::string(heuristic_name(Heuristic::kParSubtreesOptim)));
  // (load, processor) min-heap: least loaded, lowest index on ties.
  using Load = std::pair<double, std::size_t>;
  std::priority_queue<Load, std::vector<Load>, std::greater<>> loads;
  for (std::size_t p = 0; p < procs; ++p) loads.emplace(0.0, p);
  double parallel_end = 0.0;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    auto [load, proc] = loads.top();
    loads.pop();
    const double end = run_sequence(tree, s, plan.subtree_order[r], proc, load);
    parallel_end = std::max(parallel_end, end);
    loads.emplace(end, proc);
  }
  run_sequence(tree, s, plan.tail, 0, parallel_end);
  return s;
}

Schedule seq_postorder(const TaskTree& tree) {
  Schedule s(tree.size(), 1, std::string(heuristic_name(Heuristic::kSeqPostorder)));
  run_sequence(tree, s, best_postorder(tree).order, 0, 0.0);
  return s;
}

namespace {

constexpr std::array<std::pair<Heuristic, std::string_view>, 5> kNames{{
    {Heuristic::kParSubtrees, "par-subtrees"},
    {Heuristic::kParSubtreesOptim, "par-subtrees-optim"},
    {Heuristic::kParInnerFirst, "par-inner-first"},
    {Heuristic::kParDeepestFirst, "par-deepest-first"},
    {Heuristic::kSeqPostorder, "seq-postorder"},
}};

constexpr std::array<Heuristic, 4> kParallel{Heuristic::kParSubtrees, Heuristic::kParSubtreesOptim,
                                              Heuristic::kParInnerFirst, Heuristic::kParDeepestFirst};

}  // namespace

std::string_view heuristic_name(Heuristic h) {
  for (const auto& [value, name] : kNames) {
    if (value == h) return name;
  }
  return "unknown";
}

Heuristic parse_heuristic(std::string_view name) {
  for (const auto& [value, spelled] : kNames) {
    if (spelled == name) return value;
  }
  throw std::invalid_argument("unknown heuristic '" + std::string(name) + "'");
}

std::span<const Heuristic> parallel_heuristics() { return kParallel; }

Schedule run_heuristic(Heuristic h, const TaskTree& tree, std::size_t procs) {
  switch (h) {
    case Heuristic::kParSubtrees:
      return par_subtrees(tree, procs);
    case Heuristic::kParSubtreesOptim:
      return par_subtrees_optim(tree, procs);
    case Heuristic::kParInnerFirst:
      return par_inner_first(tree, procs);
    case Heuristic::kParDeepestFirst:
      return par_deepest_first(tree, procs);
    case Heuristic::kSeqPostorder:
      return seq_postorder(tree);
  }
  throw std::invalid_argument("unknown heuristic");
}

}  // namespace treesched

#include "treesched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "treesched/heuristics.hpp"
#include "treesched/simulator.hpp"
#include "treesched/traversal.hpp"

namespace treesched {

Bounds lower_bounds(const TaskTree& tree, std::size_t procs) {
  if (procs == 0) throw std::invalid_argument("lower_bounds: need at least one processor");
  Bounds b;
  b.makespan = std::max(tree.total_time() / static_cast<double>(procs), critical_path(tree));
  b.memory = best_postorder(tree).peak;
  return b;
}

bool ParetoFront::weakly_dominates(const ParetoPoint& p) const {
  return std::any_of(points.begin(), points.end(),
                     [&](const ParetoPoint& q) { return q.makespan <= p.makespan && q.memory <= p.memory; });
}

std::vector<ParetoPoint> pareto_filter(std::vector<ParetoPoint> points) {
  std::sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.makespan != b.makespan) return a.makespan < b.makespan;
    return a.memory < b.memory;
  });
  std::vector<ParetoPoint> front;
  for (const ParetoPoint& p : points) {
    if (front.empty() || p.memory < front.back().memory) front.push_back(p);
  }
  return front;
}

namespace {

using Mask = std::uint64_t;

Mask bit(NodeId i) { return Mask{1} << i; }

// Interns the shape of the not-yet-completed part of the tree so that
// isomorphic completed sets share one key. A completed node is code 0; an
// open node's code identifies the multiset of its children's codes.
class ShapeInterner {
 public:
  explicit ShapeInterner(const TaskTree& tree) : tree_(tree), code_(tree.size()) {}

  int node_code(NodeId i) const { return code_[i]; }

  // Fills node codes for `done` and returns the root's.
  int canonical(Mask done) {
    for (NodeId i : tree_.bottom_up()) {
      if (done & bit(i)) {
        code_[i] = 0;
        continue;
      }
      scratch_.clear();
      for (NodeId c : tree_.children(i)) scratch_.push_back(code_[c]);
      std::sort(scratch_.begin(), scratch_.end());
      auto [it, inserted] = ids_.try_emplace(scratch_, static_cast<int>(ids_.size()) + 1);
      code_[i] = it->second;
    }
    return code_[tree_.root()];
  }

 private:
  const TaskTree& tree_;
  std::vector<int> code_;
  std::vector<int> scratch_;
  std::map<std::vector<int>, int> ids_;
};

struct OracleState {
  Mask done = 0;
  double peak = 0.0;
};

}  // namespace

ParetoFront pareto_oracle(const TaskTree& tree, std::size_t procs, const OracleOptions& options) {
  if (procs == 0) throw std::invalid_argument("pareto_oracle: need at least one processor");
  if (!tree.is_pebble()) throw OracleLimitError("pareto_oracle: tree is not in the pebble model (w=1, n=0, f=1)");
  const std::size_t limit = std::min<std::size_t>(options.node_limit, 64);
  if (tree.size() > limit) {
    throw OracleLimitError("pareto_oracle: " + std::to_string(tree.size()) + " nodes exceeds the limit of " +
                           std::to_string(limit) + "; raise --node-limit (at most 64) at your own risk");
  }

  const std::size_t n = tree.size();
  std::vector<Mask> child_mask(n, 0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId c : tree.children(i)) child_mask[i] |= bit(c);
  }

  ShapeInterner shapes(tree);
  std::unordered_map<int, double> best_peak;  // earliest-level best peak per shape
  std::vector<ParetoPoint> finished;

  std::map<int, OracleState> level;
  level.emplace(shapes.canonical(0), OracleState{});
  best_peak[level.begin()->first] = 0.0;

  ParetoFront front;
  front.exact = !options.memory_cap && !options.makespan_cap;

  std::vector<std::vector<NodeId>> groups;
  std::vector<std::size_t> take;
  for (std::size_t step = 0; !level.empty(); ++step) {
    if (options.makespan_cap && step >= *options.makespan_cap) break;
    std::map<int, OracleState> next;

    for (const auto& [key, state] : level) {
      const Mask done = state.done;
      shapes.canonical(done);

      std::size_t live = 0;
      std::map<std::pair<NodeId, int>, std::size_t> group_of;
      groups.clear();
      for (NodeId i = 0; i < n; ++i) {
        const bool is_done = done & bit(i);
        const NodeId p = tree.parent(i);
        if (is_done) {
          if (p != kNoNode && !(done & bit(p))) ++live;
        } else if ((child_mask[i] & ~done) == 0) {
          // Ready siblings with the same open shape are interchangeable.
          auto [it, inserted] = group_of.try_emplace({p, shapes.node_code(i)}, groups.size());
          if (inserted) groups.emplace_back();
          groups[it->second].push_back(i);
        }
      }

      std::size_t budget = procs;
      if (options.memory_cap) {
        const double room = *options.memory_cap - static_cast<double>(live);
        if (room < 1.0) continue;
        budget = std::min(budget, static_cast<std::size_t>(room));
      }

      take.assign(groups.size(), 0);
      // Enumerate how many nodes to start from each group (at least one in total).
      auto emit = [&](std::size_t started) {
        Mask chosen = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
          for (std::size_t k = 0; k < take[g]; ++k) chosen |= bit(groups[g][k]);
        }
        const double peak = std::max(state.peak, static_cast<double>(live + started));
        const Mask after = done | chosen;
        if (after & bit(tree.root())) {
          finished.push_back({static_cast<double>(step + 1), peak});
          return;
        }
        const int next_key = shapes.canonical(after);
        auto seen = best_peak.find(next_key);
        if (seen != best_peak.end() && seen->second <= peak) return;
        best_peak[next_key] = peak;
        next[next_key] = {after, peak};
      };
      auto recurse = [&](auto&& self, std::size_t g, std::size_t started) -> void {
        if (g == groups.size()) {
          if (started > 0) emit(started);
          return;
        }
        const std::size_t most = std::min(groups[g].size(), budget - started);
        for (std::size_t k = 0; k <= most; ++k) {
          take[g] = k;
          self(self, g + 1, started + k);
        }
        take[g] = 0;
      };
      recurse(recurse, 0, 0);
    }
    level = std::move(next);
  }

  front.points = pareto_filter(std::move(finished));
  return front;
}

double brute_force_sequential_memory(const TaskTree& tree, std::size_t node_limit) {
  const std::size_t n = tree.size();
  if (n > std::min<std::size_t>(node_limit, 64)) {
    throw OracleLimitError("brute_force_sequential_memory: " + std::to_string(n) + " nodes exceeds the limit of " +
                           std::to_string(std::min<std::size_t>(node_limit, 64)));
  }
  std::vector<Mask> child_mask(n, 0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId c : tree.children(i)) child_mask[i] |= bit(c);
  }
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  std::unordered_map<Mask, double> memo;

  auto resident = [&](Mask done) {
    double sum = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      const NodeId p = tree.parent(i);
      if ((done & bit(i)) && p != kNoNode && !(done & bit(p))) sum += tree.out_size(i);
    }
    return sum;
  };
  auto solve = [&](auto&& self, Mask done) -> double {
    if (done == all) return 0.0;
    if (auto it = memo.find(done); it != memo.end()) return it->second;
    const double held = resident(done);
    double best = std::numeric_limits<double>::infinity();
    for (NodeId i = 0; i < n; ++i) {
      if ((done & bit(i)) || (child_mask[i] & ~done) != 0) continue;
      const double now = held + tree.exec_size(i) + tree.out_size(i);
      if (now >= best) continue;
      best = std::min(best, std::max(now, self(self, done | bit(i))));
    }
    memo.emplace(done, best);
    return best;
  };
  return solve(solve, 0);
}

ReductionCheck check_reduction_schedule(const TaskTree& tree, const ReductionBounds& bounds,
                                        std::span<const std::int64_t> a, std::int64_t b,
                                        std::span<const std::array<std::int64_t, 3>> triples) {
  if (a.empty() || a.size() % 3 != 0) throw std::invalid_argument("reduction: need 3m values");
  const std::size_t m = a.size() / 3;
  if (triples.size() != m) {
    throw InvalidPartition("reduction: expected " + std::to_string(m) + " triples, got " +
                           std::to_string(triples.size()));
  }
  std::vector<bool> used(a.size(), false);
  std::vector<std::array<std::size_t, 3>> groups;
  for (const auto& triple : triples) {
    if (triple[0] + triple[1] + triple[2] != b) {
      throw InvalidPartition("reduction: triple (" + std::to_string(triple[0]) + "," + std::to_string(triple[1]) +
                             "," + std::to_string(triple[2]) + ") does not sum to B = " + std::to_string(b));
    }
    std::array<std::size_t, 3> idx{};
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t j = 0;
      while (j < a.size() && (used[j] || a[j] != triple[k])) ++j;
      if (j == a.size()) throw InvalidPartition("reduction: value " + std::to_string(triple[k]) + " is not available");
      used[j] = true;
      idx[k] = j;
    }
    groups.push_back(idx);
  }

  const auto& top = tree.children(tree.root());
  if (top.size() != a.size()) throw std::invalid_argument("reduction: tree does not match the instance");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<std::int64_t>(tree.children(top[i]).size()) != static_cast<std::int64_t>(3 * m) * a[i]) {
      throw std::invalid_argument("reduction: tree does not match the instance");
    }
  }

  Schedule s(tree.size(), bounds.procs, "3partition");
  double t = 0.0;
  for (const auto& group : groups) {
    std::size_t proc = 0;
    for (std::size_t g : group) {
      for (NodeId leaf : tree.children(top[g])) {
        s.start[leaf] = t;
        s.proc[leaf] = proc++;
      }
    }
    t += 1.0;
    proc = 0;
    for (std::size_t g : group) {
      s.start[top[g]] = t;
      s.proc[top[g]] = proc++;
    }
    t += 1.0;
  }
  s.start[tree.root()] = t;
  s.proc[tree.root()] = 0;

  const SimReport report = check_schedule(tree, s);
  ReductionCheck out;
  out.makespan = report.makespan;
  out.peak_memory = report.peak_memory;
  out.within_bounds = report.feasible && report.makespan <= bounds.makespan && report.peak_memory <= bounds.memory;
  return out;
}

}  // namespace treesched

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treesched/task_tree.hpp"

namespace treesched {

/// Root with p*k unit leaves (pebble weights).
TaskTree gen_fork(std::size_t procs, std::size_t k);

/// Root with `subtrees` identical children c_1. Inside each subtree, c_j has
/// children d_j and c_{j+1}; c_{delta-1} has d_{delta-1} and a two-node chain
/// b_delta <- b_{delta+1}; d_j has delta-j+1 leaves. Pebble weights.
TaskTree gen_inapprox(std::size_t subtrees, std::size_t delta);

/// Join nodes 1..k-1 along a spine, each with p-1 leaves; the last join also
/// parents a chain of k+1 nodes. Pebble weights.
TaskTree gen_inner_first_adversary(std::size_t procs, std::size_t k);

/// Spine of chains-1 binary joins under the root. Each join hangs one chain,
/// the deepest join hangs two, and every chain is padded so that all leaves
/// sit exactly `depth` edges below the root. Pebble weights.
TaskTree gen_comb(std::size_t chains, std::size_t depth);

/// Processor count and the two bounds of the 3-Partition reduction.
struct ReductionBounds {
  std::size_t procs = 0;
  double memory = 0.0;
  double makespan = 0.0;
};

struct ReductionInstance {
  TaskTree tree;
  ReductionBounds bounds;
};

/// Root with 3m nodes N_i, N_i having 3m*a_i leaves. Requires sum(a) = mB and
/// B/4 < a_i < B/2 for every i.
ReductionInstance gen_3partition(std::span<const std::int64_t> a, std::int64_t b);

struct RandomTreeOptions {
  std::size_t max_children = 3;
  double weight_lo = 1.0;
  double weight_hi = 10.0;
  /// Round drawn weights to integers in [ceil(lo), floor(hi)].
  bool integer_weights = false;
};

/// Node i (i >= 1) attaches to a uniformly chosen earlier node that still has
/// fewer than max_children children. Deterministic for fixed arguments on
/// every platform (mt19937_64 plus hand-rolled range reduction).
TaskTree gen_random(std::size_t node_count, std::uint64_t seed, const RandomTreeOptions& options = {});

/// Same shape with f = 1, n = 0, w = 1 everywhere.
TaskTree with_pebble_weights(const TaskTree& shape);

/// Multifrontal weights from amalgamation size eta and factor column count mu:
/// n = eta^2 + 2 eta (mu-1), w = 2/3 eta^3 + eta^2 (mu-1) + eta (mu-1)^2,
/// f = (mu-1)^2.
TaskTree weights_from_eta_mu(const TaskTree& shape, std::span<const std::int64_t> eta,
                             std::span<const std::int64_t> mu);

struct AssemblyTreeOptions {
  std::size_t max_children = 4;
  std::int64_t max_eta = 4;
  std::int64_t root_front = 24;
};

/// Random shape with eta/mu drawn top-down so that each child's column
/// structure fits inside its parent's front, then weighted by
/// weights_from_eta_mu. Used for the synthetic benchmark corpus.
TaskTree gen_assembly_tree(std::size_t node_count, std::uint64_t seed, const AssemblyTreeOptions& options = {});

}  // namespace treesched

#include "treesched/generators.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace treesched {

namespace {

// std::uniform_*_distribution is implementation-defined; these are not.
std::size_t draw_index(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Shape only: parent of node i (i >= 1) drawn among earlier nodes that still
// have room for another child.
std::vector<NodeId> random_parents(std::size_t node_count, std::mt19937_64& rng, std::size_t max_children) {
  std::vector<NodeId> parent(node_count, kNoNode);
  std::vector<NodeId> open{0};
  std::vector<std::size_t> child_count(node_count, 0);
  for (NodeId i = 1; i < node_count; ++i) {
    const std::size_t slot = draw_index(rng, open.size());
    const NodeId p = open[slot];
    parent[i] = p;
    if (++child_count[p] == max_children) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(i);
  }
  return parent;
}

}  // namespace

TaskTree gen_fork(std::size_t procs, std::size_t k) {
  if (procs == 0 || k == 0) throw std::invalid_argument("fork: p and k must be positive");
  TreeBuilder b;
  const NodeId root = b.add_pebble(kNoNode);
  for (std::size_t i = 0; i < procs * k; ++i) b.add_pebble(root);
  return std::move(b).build();
}

TaskTree gen_inapprox(std::size_t subtrees, std::size_t delta) {
  if (subtrees == 0) throw std::invalid_argument("inapprox: need at least one subtree");
  if (delta < 2) throw std::invalid_argument("inapprox: delta must be >= 2");
  TreeBuilder b;
  const NodeId root = b.add_pebble(kNoNode);
  for (std::size_t s = 0; s < subtrees; ++s) {
    NodeId c = b.add_pebble(root);  // c_1
    for (std::size_t j = 1; j <= delta - 1; ++j) {
      const NodeId d = b.add_pebble(c);
      for (std::size_t leaf = 0; leaf < delta - j + 1; ++leaf) b.add_pebble(d);
      if (j < delta - 1) {
        c = b.add_pebble(c);
      } else {
        const NodeId b_delta = b.add_pebble(c);
        b.add_pebble(b_delta);
      }
    }
  }
  return std::move(b).build();
}

TaskTree gen_inner_first_adversary(std::size_t procs, std::size_t k) {
  if (procs < 2) throw std::invalid_argument("inner-first adversary: p must be >= 2");
  if (k < 2) throw std::invalid_argument("inner-first adversary: k must be >= 2");
  TreeBuilder b;
  NodeId join = b.add_pebble(kNoNode);
  for (std::size_t j = 1; j <= k - 1; ++j) {
    for (std::size_t leaf = 0; leaf < procs - 1; ++leaf) b.add_pebble(join);
    if (j < k - 1) join = b.add_pebble(join);
  }
  NodeId link = join;
  for (std::size_t c = k; c <= 2 * k; ++c) link = b.add_pebble(link);
  return std::move(b).build();
}

TaskTree gen_comb(std::size_t chains, std::size_t depth) {
  if (chains < 2) throw std::invalid_argument("comb: need at least two chains");
  if (depth < chains) throw std::invalid_argument("comb: depth must be >= chains");
  TreeBuilder b;
  const NodeId root = b.add_pebble(kNoNode);
  std::vector<NodeId> joins;
  NodeId up = root;
  for (std::size_t j = 0; j + 1 < chains; ++j) {
    up = b.add_pebble(up);
    joins.push_back(up);
  }
  auto hang_chain = [&](NodeId join, std::size_t join_depth) {
    NodeId link = join;
    for (std::size_t d = join_depth + 1; d <= depth; ++d) link = b.add_pebble(link);
  };
  for (std::size_t j = 0; j < joins.size(); ++j) hang_chain(joins[j], j + 1);
  hang_chain(joins.back(), joins.size());
  return std::move(b).build();
}

ReductionInstance gen_3partition(std::span<const std::int64_t> a, std::int64_t b) {
  if (b <= 0) throw std::invalid_argument("3partition: B must be positive");
  if (a.empty() || a.size() % 3 != 0) throw std::invalid_argument("3partition: need 3m values");
  const auto m = static_cast<std::int64_t>(a.size() / 3);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (4 * a[i] <= b) {
      throw std::invalid_argument("3partition: a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                                  " is not > B/4");
    }
    if (2 * a[i] >= b) {
      throw std::invalid_argument("3partition: a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                                  " is not < B/2");
    }
    sum += a[i];
  }
  if (sum != m * b) {
    throw std::invalid_argument("3partition: sum of a is " + std::to_string(sum) + ", expected mB = " +
                                std::to_string(m * b));
  }

  TreeBuilder builder;
  const NodeId root = builder.add_pebble(kNoNode);
  std::vector<NodeId> group(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) group[i] = builder.add_pebble(root);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::int64_t leaf = 0; leaf < 3 * m * a[i]; ++leaf) builder.add_pebble(group[i]);
  }
  ReductionBounds bounds{static_cast<std::size_t>(3 * m * b), static_cast<double>(3 * m * b + 3 * m),
                         static_cast<double>(2 * m + 1)};
  return {std::move(builder).build(), bounds};
}

TaskTree gen_random(std::size_t node_count, std::uint64_t seed, const RandomTreeOptions& options) {
  if (node_count == 0) throw std::invalid_argument("random: node count must be positive");
  if (options.max_children == 0) throw std::invalid_argument("random: max_children must be positive");
  if (!(options.weight_hi >= options.weight_lo)) throw std::invalid_argument("random: weight range hi < lo");

  std::mt19937_64 rng(seed);
  std::vector<NodeId> parent = random_parents(node_count, rng, options.max_children);

  const double ilo = std::ceil(options.weight_lo);
  const double ihi = std::floor(options.weight_hi);
  if (options.integer_weights && ihi < ilo) throw std::invalid_argument("random: no integer in weight range");
  auto draw_weight = [&] {
    if (options.integer_weights) {
      return static_cast<double>(draw_int(rng, static_cast<std::int64_t>(ilo), static_cast<std::int64_t>(ihi)));
    }
    return options.weight_lo + (options.weight_hi - options.weight_lo) * draw_unit(rng);
  };

  std::vector<TaskTree::Node> nodes(node_count);
  for (NodeId i = 0; i < node_count; ++i) {
    nodes[i].parent = parent[i];
    nodes[i].time = draw_weight();
    nodes[i].exec_size = draw_weight();
    nodes[i].out_size = draw_weight();
  }
  return TaskTree(std::move(nodes));
}

TaskTree with_pebble_weights(const TaskTree& shape) {
  std::vector<TaskTree::Node> nodes = shape.nodes();
  for (auto& node : nodes) {
    node.time = 1.0;
    node.exec_size = 0.0;
    node.out_size = 1.0;
  }
  return TaskTree(std::move(nodes));
}

TaskTree weights_from_eta_mu(const TaskTree& shape, std::span<const std::int64_t> eta,
                             std::span<const std::int64_t> mu) {
  if (eta.size() != shape.size() || mu.size() != shape.size()) {
    throw std::invalid_argument("eta/mu: one value per node required");
  }
  std::vector<TaskTree::Node> nodes = shape.nodes();
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (eta[i] < 1 || mu[i] < 1) {
      throw std::invalid_argument("eta/mu: node " + std::to_string(i + 1) + " needs eta >= 1 and mu >= 1");
    }
    const double e = static_cast<double>(eta[i]);
    const double m1 = static_cast<double>(mu[i] - 1);
    nodes[i].exec_size = e * e + 2.0 * e * m1;
    nodes[i].time = 2.0 / 3.0 * e * e * e + e * e * m1 + e * m1 * m1;
    nodes[i].out_size = m1 * m1;
  }
  return TaskTree(std::move(nodes));
}

TaskTree gen_assembly_tree(std::size_t node_count, std::uint64_t seed, const AssemblyTreeOptions& options) {
  if (node_count == 0) throw std::invalid_argument("assembly: node count must be positive");
  if (options.max_eta < 1 || options.root_front < 1) throw std::invalid_argument("assembly: bad options");
  std::mt19937_64 rng(seed);
  std::vector<NodeId> parent = random_parents(node_count, rng, options.max_children);

  std::vector<std::int64_t> eta(node_count), mu(node_count);
  eta[0] = options.root_front;
  mu[0] = 1;
  // Parents always precede children in generation order.
  for (NodeId i = 1; i < node_count; ++i) {
    const std::int64_t parent_front = eta[parent[i]] + mu[parent[i]] - 1;
    eta[i] = draw_int(rng, 1, options.max_eta);
    const double keep = 0.5 + 0.5 * draw_unit(rng);
    mu[i] = 1 + std::max<std::int64_t>(1, static_cast<std::int64_t>(keep * static_cast<double>(parent_front)));
  }

  std::vector<TaskTree::Node> nodes(node_count);
  for (NodeId i = 0; i < node_count; ++i) nodes[i].parent = parent[i];
  return weights_from_eta_mu(TaskTree(std::move(nodes)), eta, mu);
}

}  // namespace treesched

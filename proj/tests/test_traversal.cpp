#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treesched/generators.hpp"
#include "treesched/traversal.hpp"

using namespace treesched;

namespace {

// Same tree with node ids permuted by `perm` (new id of old node i is perm[i]).
TaskTree relabel(const TaskTree& t, const std::vector<NodeId>& perm) {
  std::vector<TaskTree::Node> nodes(t.size());
  for (NodeId i = 0; i < t.size(); ++i) {
    TaskTree::Node node = t.nodes()[i];
    if (node.parent != kNoNode) node.parent = perm[node.parent];
    nodes[perm[i]] = node;
  }
  return TaskTree(std::move(nodes));
}

double max_footprint(const TaskTree& t) {
  double m = 0.0;
  for (NodeId i = 0; i < t.size(); ++i) m = std::max(m, t.node_footprint(i));
  return m;
}

}  // namespace

TEST_CASE("postorder_peak examples") {
  const std::vector<NodeId> chain_order{2, 1, 0};
  CHECK(postorder_peak(testing::pebble_chain(3), chain_order) == 2.0);
  CHECK(postorder_peak(testing::single_node(5, 2, 3), std::vector<NodeId>{0}) == 5.0);
  const TaskTree fork = gen_fork(2, 3);
  CHECK(postorder_peak(fork, std::vector<NodeId>{1, 2, 3, 4, 5, 6, 0}) == 7.0);
  CHECK(postorder_peak(fork, std::vector<NodeId>{6, 3, 5, 1, 2, 4, 0}) == 7.0);
}

TEST_CASE("order validation") {
  const TaskTree t = gen_inapprox(1, 2);  // root 0, c1 1, d1 2, leaves 3 4, b2 5, b3 6
  CHECK(is_postorder(t, std::vector<NodeId>{3, 4, 2, 6, 5, 1, 0}));
  CHECK(!is_postorder(t, std::vector<NodeId>{3, 6, 4, 2, 5, 1, 0}));  // interleaved subtrees
  CHECK(is_topological(t, std::vector<NodeId>{3, 6, 4, 2, 5, 1, 0}));
  CHECK(!is_topological(t, std::vector<NodeId>{2, 3, 4, 6, 5, 1, 0}));
  CHECK(!is_topological(t, std::vector<NodeId>{3, 4, 2, 6, 5, 1}));
  CHECK(!is_topological(t, std::vector<NodeId>{3, 3, 2, 6, 5, 1, 0}));
  CHECK_THROWS_AS(postorder_peak(t, std::vector<NodeId>{3, 6, 4, 2, 5, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sequential_peak(t, std::vector<NodeId>{0, 1, 2, 3, 4, 5, 6}), std::invalid_argument);
}

TEST_CASE("best_postorder on the adversarial families") {
  CHECK(best_postorder(gen_inapprox(3, 4)).peak == 7.0);
  CHECK(best_postorder(gen_inner_first_adversary(4, 5)).peak == 5.0);
  CHECK(best_postorder(gen_comb(4, 8)).peak == 3.0);
  CHECK(best_postorder(testing::pebble_chain(3)).peak == 2.0);
  CHECK(best_postorder(testing::single_node(5, 2, 3)).peak == 5.0);
}

TEST_CASE("best_postorder handles deep chains without recursion") {
  const TaskTree t = testing::pebble_chain(200000);
  const PostOrder po = best_postorder(t);
  CHECK(po.order.front() == 199999);
  CHECK(po.peak == 2.0);
}

TEST_CASE("property: best_postorder is optimal among postorders") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 1 + seed % 9;
    const TaskTree t = gen_random(n, seed, {.max_children = 4, .weight_lo = 0, .weight_hi = 5, .integer_weights = true});
    const PostOrder po = best_postorder(t);
    CHECK(is_postorder(t, po.order));
    CHECK(po.peak == postorder_peak(t, po.order));
    CHECK(po.peak == testing::min_peak_over_postorders(t));
    CHECK(po.peak >= max_footprint(t));
    CHECK(po.peak == subtree_peaks(t).peak[t.root()]);
  }
}

TEST_CASE("property: peak is independent of id labelling") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TaskTree t = gen_random(25, seed, {.max_children = 4, .weight_lo = 0, .weight_hi = 9, .integer_weights = true});
    std::vector<NodeId> perm(t.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(best_postorder(relabel(t, perm)).peak == best_postorder(t).peak);
  }
}

TEST_CASE("property: postorder_peak is monotone in output sizes") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TaskTree t = gen_random(20, seed, {.max_children = 3, .weight_lo = 0, .weight_hi = 4, .integer_weights = true});
    const PostOrder po = best_postorder(t);
    std::vector<TaskTree::Node> nodes = t.nodes();
    nodes[seed % t.size()].out_size += 1.5;
    const TaskTree heavier(std::move(nodes));
    CHECK(postorder_peak(heavier, po.order) >= po.peak);
  }
}

TEST_CASE("sequential_peak matches the naive accounting on any topological order") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const TaskTree t = gen_random(15, seed, {.max_children = 3, .weight_lo = 0, .weight_hi = 6, .integer_weights = true});
    // Kahn order with smallest ready id first: topological but rarely a postorder.
    std::vector<std::size_t> pending(t.size());
    std::vector<NodeId> ready, order;
    for (NodeId i = 0; i < t.size(); ++i) {
      pending[i] = t.children(i).size();
      if (pending[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
      std::sort(ready.rbegin(), ready.rend());
      const NodeId i = ready.back();
      ready.pop_back();
      order.push_back(i);
      if (t.parent(i) != kNoNode && --pending[t.parent(i)] == 0) ready.push_back(t.parent(i));
    }
    CHECK(sequential_peak(t, order) == testing::naive_sequential_peak(t, order));
  }
}

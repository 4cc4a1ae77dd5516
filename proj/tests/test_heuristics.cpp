#include <doctest.h>

#include "support.hpp"
#include "treesched/generators.hpp"
#include "treesched/heuristics.hpp"
#include "treesched/simulator.hpp"
#include "treesched/splitting.hpp"

using namespace treesched;

namespace {

double makespan_of(const TaskTree& t, const Schedule& s) {
  double end = 0.0;
  for (NodeId i = 0; i < t.size(); ++i) end = std::max(end, s.start[i] + t.time(i));
  return end;
}

std::vector<NodeId> start_order(const Schedule& s) {
  std::vector<NodeId> order(s.start.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return s.start[a] < s.start[b]; });
  return order;
}

TaskTree scaled(const TaskTree& t, double time_factor, double size_factor) {
  std::vector<TaskTree::Node> nodes = t.nodes();
  for (auto& node : nodes) {
    node.time *= time_factor;
    node.exec_size *= size_factor;
    node.out_size *= size_factor;
  }
  return TaskTree(std::move(nodes));
}

const std::vector<Heuristic> kAll{Heuristic::kParSubtrees, Heuristic::kParSubtreesOptim, Heuristic::kParInnerFirst,
                                  Heuristic::kParDeepestFirst};

}  // namespace

TEST_CASE("weighted depth") {
  CHECK(weighted_depth(testing::pebble_chain(3)) == std::vector<double>{1, 2, 3});
  const auto fork = weighted_depth(gen_fork(2, 3));
  CHECK(fork[0] == 1.0);
  for (NodeId i = 1; i < 7; ++i) CHECK(fork[i] == 2.0);
  CHECK(weighted_depth(TaskTree({{kNoNode, 5, 0, 1}, {0, 0, 0, 1}})) == std::vector<double>{5, 5});
  CHECK(critical_path(gen_inapprox(3, 4)) == 6.0);
}

TEST_CASE("fork(2,3) with two processors") {
  const TaskTree t = gen_fork(2, 3);
  struct Expect {
    Heuristic h;
    double makespan, peak;
  };
  for (const auto& [h, makespan, peak] : {Expect{Heuristic::kParSubtrees, 6, 7}, Expect{Heuristic::kParSubtreesOptim, 4, 7},
                                          Expect{Heuristic::kParInnerFirst, 4, 7}, Expect{Heuristic::kParDeepestFirst, 4, 7}}) {
    const Schedule s = run_heuristic(h, t, 2);
    const SimReport r = check_schedule(t, s);
    CAPTURE(heuristic_name(h));
    CHECK(r.feasible);
    CHECK(r.makespan == makespan);
    CHECK(r.peak_memory == peak);
    CHECK(s.heuristic == heuristic_name(h));
  }
  CHECK(check_schedule(gen_fork(3, 2), par_subtrees_optim(gen_fork(3, 2), 3)).makespan == 3.0);
}

TEST_CASE("single node and chains") {
  const TaskTree one = testing::single_node(5, 2, 3);
  for (Heuristic h : kAll) {
    const Schedule s = run_heuristic(h, one, 4);
    CHECK(s.start[0] == 0.0);
    CHECK(check_schedule(one, s).makespan == 5.0);
  }
  const TaskTree chain = testing::unit_time_chain(6);
  for (Heuristic h : kAll) CHECK(check_schedule(chain, run_heuristic(h, chain, 3)).makespan == 6.0);
  CHECK(par_inner_first(chain, 3).start == par_deepest_first(chain, 3).start);
}

TEST_CASE("one processor inner-first replays the input postorder") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const TaskTree t = gen_random(1 + seed % 12, seed, {.max_children = 3, .weight_lo = 1, .weight_hi = 6, .integer_weights = true});
    const Schedule s = par_inner_first(t, 1);
    CHECK(start_order(s) == best_postorder(t).order);
  }
}

TEST_CASE("one processor: subtree heuristics and inner-first reach the postorder peak") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const TaskTree t = gen_random(2 + seed % 30, seed, {.max_children = 4, .weight_lo = 1, .weight_hi = 9, .integer_weights = true});
    const PostOrder po = best_postorder(t);
    for (Heuristic h : {Heuristic::kParSubtrees, Heuristic::kParSubtreesOptim, Heuristic::kParInnerFirst, Heuristic::kSeqPostorder}) {
      const SimReport r = check_schedule(t, run_heuristic(h, t, 1));
      CHECK(r.peak_memory == po.peak);
      CHECK(r.makespan == t.total_time());
    }
    CHECK(check_schedule(t, par_deepest_first(t, 1)).makespan == t.total_time());
  }
}

TEST_CASE("inner-first adversary blows up memory") {
  const TaskTree t = gen_inner_first_adversary(3, 4);
  CHECK(best_postorder(t).peak == 4.0);
  CHECK(check_schedule(t, par_inner_first(t, 3)).peak_memory >= 7.0);
}

TEST_CASE("deepest-first on a comb") {
  const TaskTree t = gen_comb(6, 10);
  CHECK(best_postorder(t).peak == 3.0);
  CHECK(check_schedule(t, par_deepest_first(t, 6)).peak_memory >= 6.0);
}

TEST_CASE("policy factories reject non-postorders") {
  const TaskTree t = gen_fork(1, 2);
  CHECK_THROWS_AS(PriorityPolicy::inner_first(t, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PriorityPolicy::deepest_first(t, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(par_subtrees(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_heuristic("fastest"), std::invalid_argument);
  for (Heuristic h : kAll) CHECK(parse_heuristic(heuristic_name(h)) == h);
  CHECK(parallel_heuristics().size() == 4);
}

TEST_CASE("property: feasibility and approximation bounds") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TaskTree t = gen_random(10 + seed * 3, seed, {.max_children = 1 + seed % 6, .weight_lo = 0.5, .weight_hi = 10});
    const double seq_peak = best_postorder(t).peak;
    const double graham = t.total_time();
    const double path = critical_path(t);
    for (std::size_t p : {2u, 4u, 8u}) {
      for (Heuristic h : kAll) {
        const Schedule s = run_heuristic(h, t, p);
        const SimReport r = check_schedule(t, s);
        CAPTURE(seed);
        CAPTURE(heuristic_name(h));
        REQUIRE(r.feasible);
        CHECK(r.makespan == makespan_of(t, s));
        if (h == Heuristic::kParInnerFirst || h == Heuristic::kParDeepestFirst) {
          CHECK(r.makespan <= (graham / p + path) * (1 + 1e-9));
        }
      }
      const SimReport sub = check_schedule(t, par_subtrees(t, p));
      CHECK(sub.peak_memory <= (p + 1) * seq_peak * (1 + 1e-9));
      CHECK(sub.makespan == doctest::Approx(split_subtrees(t, p).predicted_makespan).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: integer weights give the predicted makespan exactly") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TaskTree t = gen_random(5 + seed, seed, {.max_children = 4, .weight_lo = 1, .weight_hi = 8, .integer_weights = true});
    for (std::size_t p : {2u, 3u, 5u}) {
      CHECK(check_schedule(t, par_subtrees(t, p)).makespan == split_subtrees(t, p).predicted_makespan);
      CHECK(check_schedule(t, par_subtrees_optim(t, p)).makespan <= split_subtrees(t, p).predicted_makespan);
    }
  }
}

TEST_CASE("property: scaling times or sizes") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TaskTree t = gen_random(40, seed, {.max_children = 3, .weight_lo = 1, .weight_hi = 9});
    // Powers of two keep every comparison exact.
    const TaskTree slow = scaled(t, 4.0, 1.0);
    const TaskTree big = scaled(t, 1.0, 0.25);
    for (Heuristic h : kAll) {
      const SimReport base = check_schedule(t, run_heuristic(h, t, 4));
      const SimReport rs = check_schedule(slow, run_heuristic(h, slow, 4));
      const SimReport rb = check_schedule(big, run_heuristic(h, big, 4));
      CHECK(rs.makespan == 4.0 * base.makespan);
      CHECK(rs.peak_memory == base.peak_memory);
      CHECK(rb.makespan == base.makespan);
      CHECK(rb.peak_memory == 0.25 * base.peak_memory);
    }
  }
}

TEST_CASE("property: determinism") {
  const TaskTree t = gen_assembly_tree(500, 9);
  for (Heuristic h : kAll) CHECK(run_heuristic(h, t, 8) == run_heuristic(h, t, 8));
}

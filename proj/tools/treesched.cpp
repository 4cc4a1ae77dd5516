// treesched: generate task trees, run memory-aware scheduling heuristics,
// benchmark them and compare against the exhaustive oracle.
//
// Exit codes: 0 ok, 1 usage, 2 input error, 3 internal invariant violation.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treesched/bench.hpp"
#include "treesched/generators.hpp"
#include "treesched/heuristics.hpp"
#include "treesched/oracle.hpp"
#include "treesched/simulator.hpp"
#include "treesched/task_tree.hpp"

namespace {

using namespace treesched;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string format = "csv";
};

struct GenFlags {
  std::string family;
  std::size_t procs = 2;
  std::size_t k = 3;
  std::size_t n = 10;
  std::size_t delta = 3;
  std::size_t chains = 4;
  std::size_t depth = 8;
  std::vector<std::int64_t> a;
  std::int64_t b = 0;
  std::size_t max_children = 3;
  double lo = 1.0;
  double hi = 10.0;
  bool integer = false;
  bool pebble = false;
  std::string output;
};

std::string tree_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_gen(const GenFlags& g, const GlobalFlags& global) {
  std::ostringstream text;
  TaskTree tree = [&]() -> TaskTree {
    if (g.family == "fork") return gen_fork(g.procs, g.k);
    if (g.family == "inapprox") return gen_inapprox(g.n, g.delta);
    if (g.family == "inner-adversary") return gen_inner_first_adversary(g.procs, g.k);
    if (g.family == "comb") return gen_comb(g.chains, g.depth);
    if (g.family == "3partition") {
      ReductionInstance inst = gen_3partition(g.a, g.b);
      text << "# p=" << inst.bounds.procs << " b_mem=" << format_real(inst.bounds.memory)
           << " b_cmax=" << format_real(inst.bounds.makespan) << '\n';
      return std::move(inst.tree);
    }
    if (g.family == "random") {
      RandomTreeOptions opt;
      opt.max_children = g.max_children;
      opt.weight_lo = g.lo;
      opt.weight_hi = g.hi;
      opt.integer_weights = g.integer;
      TaskTree t = gen_random(g.n, global.seed, opt);
      return g.pebble ? with_pebble_weights(t) : t;
    }
    if (g.family == "eta-mu") {
      AssemblyTreeOptions opt;
      opt.max_children = g.max_children;
      return gen_assembly_tree(g.n, global.seed, opt);
    }
    throw std::invalid_argument("unknown family '" + g.family + "'");
  }();
  serialize_tree(text, tree);
  write_output(g.output, text.str());
  return 0;
}

int cmd_run(const std::string& path, const std::string& heuristic, std::size_t procs, const GlobalFlags& global) {
  const TaskTree tree = read_tree_file(path);
  const RunRecord r = run_scenario(tree, tree_label(path), parse_heuristic(heuristic), procs);
  if (global.format == "text") {
    std::cout << to_text(r);
  } else {
    std::cout << run_record_header() << '\n' << to_csv(r) << '\n';
  }
  if (!r.feasible) throw InvariantViolation("infeasible schedule: " + r.violation);
  return 0;
}

int cmd_trace(const std::string& path, const std::string& heuristic, std::size_t procs) {
  const TaskTree tree = read_tree_file(path);
  const Schedule s = run_heuristic(parse_heuristic(heuristic), tree, procs);
  const SimReport report = check_schedule(tree, s);
  std::cout << "time,memory\n";
  for (const TracePoint& pt : report.trace) std::cout << format_real(pt.time) << ',' << format_real(pt.memory) << '\n';
  if (!report.feasible) throw InvariantViolation("infeasible schedule: " + report.violation);
  return 0;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& heuristics, const std::vector<std::size_t>& procs,
              const std::string& output, std::string summary_path, const GlobalFlags& global) {
  BenchOptions options;
  for (const auto& h : heuristics) options.heuristics.push_back(parse_heuristic(h));
  options.procs = procs;
  options.jobs = global.jobs;
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);

  const BenchResult result = run_bench(dir, options);
  for (const auto& line : result.skipped) std::cerr << "warning: skipped " << line << '\n';

  std::ostringstream records, summary, log;
  write_records_csv(records, result.records);
  write_summary_csv(summary, result.summary);
  for (const auto& line : result.skipped) log << line << '\n';
  if (summary_path.empty()) summary_path = output + ".summary.csv";
  write_output(output, records.str());
  write_output(summary_path, summary.str());
  write_output(output + ".log", log.str());

  if (global.format == "text") {
    for (const auto& s : result.summary) {
      std::cout << s.heuristic << ": best memory " << format_real(100 * s.best_memory) << "%, best makespan "
                << format_real(100 * s.best_makespan) << "%, avg norm memory " << format_real(s.avg_norm_memory)
                << ", avg norm makespan " << format_real(s.avg_norm_makespan) << '\n';
    }
  } else {
    std::cout << summary.str();
  }
  for (const auto& r : result.records) {
    if (!r.feasible) throw InvariantViolation(r.tree_name + "/" + r.heuristic + ": " + r.violation);
  }
  return 0;
}

int cmd_oracle(const std::string& path, std::size_t procs, const OracleOptions& options) {
  const TaskTree tree = read_tree_file(path);
  const ParetoFront front = pareto_oracle(tree, procs, options);
  std::cout << "makespan,memory\n";
  for (const ParetoPoint& pt : front.points) std::cout << format_real(pt.makespan) << ',' << format_real(pt.memory) << '\n';
  if (!front.exact) std::cout << "# bounded search: points are exact only within the caps\n";
  for (Heuristic h : parallel_heuristics()) {
    const SimReport r = check_schedule(tree, run_heuristic(h, tree, procs));
    if (!r.feasible) throw InvariantViolation(std::string(heuristic_name(h)) + ": " + r.violation);
    const bool on_front = std::any_of(front.points.begin(), front.points.end(), [&](const ParetoPoint& q) {
      return q.makespan == r.makespan && q.memory == r.peak_memory;
    });
    std::cout << "# " << heuristic_name(h) << ' ' << format_real(r.makespan) << ',' << format_real(r.peak_memory) << ' '
              << (on_front ? "pareto-optimal" : front.weakly_dominates({r.makespan, r.peak_memory}) ? "dominated"
                                                                                                   : "not-covered")
              << '\n';
  }
  if (front.exact) {
    // Every feasible schedule must be covered by an exact front.
    for (Heuristic h : parallel_heuristics()) {
      const SimReport r = check_schedule(tree, run_heuristic(h, tree, procs));
      if (!front.weakly_dominates({r.makespan, r.peak_memory})) {
        throw InvariantViolation(std::string(heuristic_name(h)) + " beats the exhaustive front");
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-aware parallel scheduling of task trees"};
  app.require_subcommand(1);
  GlobalFlags global;
  app.add_option("--seed", global.seed, "Seed for random generators")->capture_default_str();
  app.add_option("--jobs", global.jobs, "Worker threads for bench")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tree file")->fallthrough();
  gen_cmd->add_option("--family", gen.family, "fork|inapprox|inner-adversary|comb|3partition|random|eta-mu")
      ->required()
      ->check(CLI::IsMember({"fork", "inapprox", "inner-adversary", "comb", "3partition", "random", "eta-mu"}));
  gen_cmd->add_option("--procs,-p", gen.procs, "Processor count (fork, inner-adversary)");
  gen_cmd->add_option("--k", gen.k, "k (fork, inner-adversary)");
  gen_cmd->add_option("--n", gen.n, "Subtree count (inapprox) or node count (random, eta-mu)");
  gen_cmd->add_option("--delta", gen.delta, "delta (inapprox)");
  gen_cmd->add_option("--chains", gen.chains, "Chain count (comb)");
  gen_cmd->add_option("--depth", gen.depth, "Leaf depth (comb)");
  gen_cmd->add_option("--a", gen.a, "3-Partition values")->delimiter(',');
  gen_cmd->add_option("--B", gen.b, "3-Partition target sum");
  gen_cmd->add_option("--max-children", gen.max_children, "Maximum children per node (random, eta-mu)");
  gen_cmd->add_option("--lo", gen.lo, "Lowest weight (random)");
  gen_cmd->add_option("--hi", gen.hi, "Highest weight (random)");
  gen_cmd->add_flag("--integer", gen.integer, "Integer weights (random)");
  gen_cmd->add_flag("--pebble", gen.pebble, "Unit time/output, empty execution file (random)");
  gen_cmd->add_option("--output,-o", gen.output, "Output file (default stdout)");

  std::string tree_path;
  std::string heuristic = "par-subtrees";
  std::size_t procs = 2;
  auto* run_cmd = app.add_subcommand("run", "Schedule one tree and report makespan and memory")->fallthrough();
  run_cmd->add_option("tree", tree_path, "Tree file")->required();
  run_cmd->add_option("--heuristic,-H", heuristic, "Heuristic")->capture_default_str();
  run_cmd->add_option("--procs,-p", procs, "Processor count")->capture_default_str()->check(CLI::PositiveNumber);

  auto* trace_cmd = app.add_subcommand("trace", "Print the memory trace (time,memory) of a schedule")->fallthrough();
  trace_cmd->add_option("tree", tree_path, "Tree file")->required();
  trace_cmd->add_option("--heuristic,-H", heuristic, "Heuristic")->capture_default_str();
  trace_cmd->add_option("--procs,-p", procs, "Processor count")->capture_default_str()->check(CLI::PositiveNumber);

  std::string bench_dir, bench_output, bench_summary;
  std::vector<std::string> bench_heuristics{"par-subtrees", "par-subtrees-optim", "par-inner-first",
                                            "par-deepest-first"};
  std::vector<std::size_t> bench_procs{2, 4, 8, 16, 32};
  auto* bench_cmd = app.add_subcommand("bench", "Cross product of trees x heuristics x processor counts")->fallthrough();
  bench_cmd->add_option("dir", bench_dir, "Directory of tree files")->required();
  bench_cmd->add_option("--heuristics", bench_heuristics, "Heuristics")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--procs", bench_procs, "Processor counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--output,-o", bench_output, "CSV output file")->required();
  bench_cmd->add_option("--summary", bench_summary, "Summary CSV (default <output>.summary.csv)");

  OracleOptions oracle_options;
  std::optional<double> memory_cap;
  std::optional<std::size_t> makespan_cap;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive Pareto front for a small pebble tree")->fallthrough();
  oracle_cmd->add_option("tree", tree_path, "Tree file")->required();
  oracle_cmd->add_option("--procs,-p", procs, "Processor count")->capture_default_str()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--node-limit", oracle_options.node_limit, "Largest tree accepted")->capture_default_str();
  oracle_cmd->add_option("--memory-cap", memory_cap, "Prune partial schedules above this peak (bounded search)");
  oracle_cmd->add_option("--makespan-cap", makespan_cap, "Prune partial schedules longer than this (bounded search)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, global);
    if (*run_cmd) return cmd_run(tree_path, heuristic, procs, global);
    if (*trace_cmd) return cmd_trace(tree_path, heuristic, procs);
    if (*bench_cmd) return cmd_bench(bench_dir, bench_heuristics, bench_procs, bench_output, bench_summary, global);
    if (*oracle_cmd) {
      oracle_options.memory_cap = memory_cap;
      oracle_options.makespan_cap = makespan_cap;
      return cmd_oracle(tree_path, procs, oracle_options);
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

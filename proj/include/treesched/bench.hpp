#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesched/heuristics.hpp"
#include "treesched/simulator.hpp"
#include "treesched/task_tree.hpp"

namespace treesched {

/// One heuristic on one tree with p processors, normalized by lower bounds.
struct RunRecord {
  std::string tree_name;
  std::string heuristic;
  std::size_t procs = 0;
  double makespan = 0.0;
  double peak_memory = 0.0;
  double lb_makespan = 0.0;
  double lb_memory = 0.0;
  double norm_makespan = 0.0;
  double norm_memory = 0.0;
  bool feasible = true;
  std::string violation;
};

/// Schedules, simulates and normalizes.
RunRecord run_scenario(const TaskTree& tree, const std::string& tree_name, Heuristic h, std::size_t procs);

/// "tree,heuristic,p,makespan,peak_memory,lb_makespan,lb_memory,norm_makespan,norm_memory"
std::string run_record_header();
std::string to_csv(const RunRecord& r);
std::string to_text(const RunRecord& r);

/// Per-heuristic statistics over scenarios (tree, p). "Best" compares the
/// heuristics present in the bench; ties count for every tied heuristic.
struct HeuristicSummary {
  std::string heuristic;
  std::size_t scenarios = 0;
  double best_memory = 0.0;            // fraction of scenarios
  double within5_memory = 0.0;         // fraction with peak <= 1.05 * best
  double avg_dev_seq_memory = 0.0;     // mean(norm_memory - 1)
  double best_makespan = 0.0;
  double within5_makespan = 0.0;
  double avg_dev_best_makespan = 0.0;  // mean(makespan / best - 1)
  double avg_norm_makespan = 0.0;
  double avg_norm_memory = 0.0;
};

std::vector<HeuristicSummary> summarize(const std::vector<RunRecord>& records);
std::string summary_header();
std::string to_csv(const HeuristicSummary& s);

struct BenchOptions {
  std::vector<Heuristic> heuristics;
  std::vector<std::size_t> procs;
  std::size_t jobs = 1;
};

struct BenchResult {
  /// Sorted by (tree, heuristic, p).
  std::vector<RunRecord> records;
  std::vector<HeuristicSummary> summary;
  /// One line per tree file that could not be read.
  std::vector<std::string> skipped;
};

/// Runs every tree file (regular files, sorted by name) in `dir` against every
/// heuristic and processor count. Scenarios are spread over `jobs` threads;
/// the output does not depend on the thread count.
BenchResult run_bench(const std::filesystem::path& dir, const BenchOptions& options);

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<HeuristicSummary>& summary);

}  // namespace treesched

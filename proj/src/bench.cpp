#include "treesched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "treesched/oracle.hpp"

namespace treesched {

RunRecord run_scenario(const TaskTree& tree, const std::string& tree_name, Heuristic h, std::size_t procs) {
  const Schedule schedule = run_heuristic(h, tree, procs);
  const SimReport report = check_schedule(tree, schedule);
  const Bounds lb = lower_bounds(tree, schedule.procs);

  RunRecord r;
  r.tree_name = tree_name;
  r.heuristic = std::string(heuristic_name(h));
  r.procs = schedule.procs;
  r.makespan = report.makespan;
  r.peak_memory = report.peak_memory;
  r.lb_makespan = lb.makespan;
  r.lb_memory = lb.memory;
  r.norm_makespan = lb.makespan > 0.0 ? report.makespan / lb.makespan : 1.0;
  r.norm_memory = lb.memory > 0.0 ? report.peak_memory / lb.memory : 1.0;
  r.feasible = report.feasible;
  r.violation = report.violation;
  return r;
}

std::string run_record_header() {
  return "tree,heuristic,p,makespan,peak_memory,lb_makespan,lb_memory,norm_makespan,norm_memory";
}

std::string to_csv(const RunRecord& r) {
  std::ostringstream out;
  out << r.tree_name << ',' << r.heuristic << ',' << r.procs << ',' << format_real(r.makespan) << ','
      << format_real(r.peak_memory) << ',' << format_real(r.lb_makespan) << ',' << format_real(r.lb_memory) << ','
      << format_real(r.norm_makespan) << ',' << format_real(r.norm_memory);
  return out.str();
}

std::string to_text(const RunRecord& r) {
  std::ostringstream out;
  out << "tree          " << r.tree_name << '\n'
      << "heuristic     " << r.heuristic << '\n'
      << "processors    " << r.procs << '\n'
      << "makespan      " << format_real(r.makespan) << "  (lower bound " << format_real(r.lb_makespan)
      << ", ratio " << format_real(r.norm_makespan) << ")\n"
      << "peak memory   " << format_real(r.peak_memory) << "  (sequential postorder " << format_real(r.lb_memory)
      << ", ratio " << format_real(r.norm_memory) << ")\n";
  return out.str();
}

std::vector<HeuristicSummary> summarize(const std::vector<RunRecord>& records) {
  // scenario (tree, p) -> best makespan / memory over heuristics
  std::map<std::pair<std::string, std::size_t>, std::pair<double, double>> best;
  for (const RunRecord& r : records) {
    auto [it, inserted] = best.try_emplace({r.tree_name, r.procs}, r.makespan, r.peak_memory);
    if (!inserted) {
      it->second.first = std::min(it->second.first, r.makespan);
      it->second.second = std::min(it->second.second, r.peak_memory);
    }
  }

  std::map<std::string, HeuristicSummary> by_name;
  for (const RunRecord& r : records) {
    const auto [best_ms, best_mem] = best.at({r.tree_name, r.procs});
    HeuristicSummary& s = by_name[r.heuristic];
    s.heuristic = r.heuristic;
    ++s.scenarios;
    s.best_memory += r.peak_memory == best_mem ? 1.0 : 0.0;
    s.within5_memory += r.peak_memory <= 1.05 * best_mem ? 1.0 : 0.0;
    s.avg_dev_seq_memory += r.norm_memory - 1.0;
    s.best_makespan += r.makespan == best_ms ? 1.0 : 0.0;
    s.within5_makespan += r.makespan <= 1.05 * best_ms ? 1.0 : 0.0;
    s.avg_dev_best_makespan += best_ms > 0.0 ? r.makespan / best_ms - 1.0 : 0.0;
    s.avg_norm_makespan += r.norm_makespan;
    s.avg_norm_memory += r.norm_memory;
  }

  std::vector<HeuristicSummary> out;
  for (auto& [name, s] : by_name) {
    const double count = static_cast<double>(s.scenarios);
    for (double* field : {&s.best_memory, &s.within5_memory, &s.avg_dev_seq_memory, &s.best_makespan,
                          &s.within5_makespan, &s.avg_dev_best_makespan, &s.avg_norm_makespan, &s.avg_norm_memory}) {
      *field /= count;
    }
    out.push_back(s);
  }
  return out;
}

std::string summary_header() {
  return "heuristic,scenarios,best_memory,within5_memory,avg_dev_seq_memory,best_makespan,within5_makespan,"
         "avg_dev_best_makespan,avg_norm_makespan,avg_norm_memory";
}

std::string to_csv(const HeuristicSummary& s) {
  std::ostringstream out;
  out << s.heuristic << ',' << s.scenarios << ',' << format_real(s.best_memory) << ','
      << format_real(s.within5_memory) << ',' << format_real(s.avg_dev_seq_memory) << ','
      << format_real(s.best_makespan) << ',' << format_real(s.within5_makespan) << ','
      << format_real(s.avg_dev_best_makespan) << ',' << format_real(s.avg_norm_makespan) << ','
      << format_real(s.avg_norm_memory);
  return out.str();
}

BenchResult run_bench(const std::filesystem::path& dir, const BenchOptions& options) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchResult result;
  std::vector<std::pair<std::string, TaskTree>> trees;
  for (const auto& path : files) {
    try {
      trees.emplace_back(path.filename().string(), read_tree_file(path.string()));
    } catch (const std::exception& e) {
      result.skipped.push_back(path.string() + ": " + e.what());
    }
  }

  std::vector<Heuristic> heuristics = options.heuristics;
  std::sort(heuristics.begin(), heuristics.end(),
            [](Heuristic a, Heuristic b) { return heuristic_name(a) < heuristic_name(b); });
  heuristics.erase(std::unique(heuristics.begin(), heuristics.end()), heuristics.end());
  std::vector<std::size_t> procs = options.procs;
  std::sort(procs.begin(), procs.end());
  procs.erase(std::unique(procs.begin(), procs.end()), procs.end());

  struct Task {
    std::size_t tree;
    Heuristic heuristic;
    std::size_t procs;
  };
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    for (Heuristic h : heuristics) {
      for (std::size_t p : procs) tasks.push_back({t, h, p});
    }
  }

  result.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      result.records[k] = run_scenario(trees[task.tree].second, trees[task.tree].first, task.heuristic, task.procs);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  std::vector<std::jthread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();

  // Task order is already (tree, heuristic, p); tree names are unique file names.
  result.summary = summarize(result.records);
  return result;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << run_record_header() << '\n';
  for (const RunRecord& r : records) out << to_csv(r) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<HeuristicSummary>& summary) {
  out << summary_header() << '\n';
  for (const HeuristicSummary& s : summary) out << to_csv(s) << '\n';
}

}  // namespace treesched

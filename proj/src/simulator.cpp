#include "treesched/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace treesched {

namespace {

std::string node_name(NodeId i) { return "node " + std::to_string(i + 1); }

std::string first_violation(const TaskTree& tree, const Schedule& s) {
  const std::size_t n = tree.size();
  for (NodeId i = 0; i < n; ++i) {
    if (!std::isfinite(s.start[i]) || s.start[i] < 0.0) return node_name(i) + ": invalid start time";
    if (s.proc[i] >= s.procs) return node_name(i) + ": processor index out of range";
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId c : tree.children(i)) {
      if (s.start[i] < s.start[c] + tree.time(c)) {
        return node_name(i) + " starts before child " + std::to_string(c + 1) + " finishes";
      }
    }
  }
  // (start, end, node) per processor
  std::vector<std::vector<std::tuple<double, double, NodeId>>> lanes(s.procs);
  for (NodeId i = 0; i < n; ++i) lanes[s.proc[i]].emplace_back(s.start[i], s.start[i] + tree.time(i), i);
  for (std::size_t p = 0; p < lanes.size(); ++p) {
    auto& lane = lanes[p];
    std::sort(lane.begin(), lane.end());
    for (std::size_t k = 1; k < lane.size(); ++k) {
      if (std::get<0>(lane[k]) < std::get<1>(lane[k - 1])) {
        return node_name(std::get<2>(lane[k])) + " overlaps " + node_name(std::get<2>(lane[k - 1])) +
               " on processor " + std::to_string(p);
      }
    }
  }
  return {};
}

}  // namespace

SimReport check_schedule(const TaskTree& tree, const Schedule& schedule, TieRule rule) {
  const std::size_t n = tree.size();
  if (schedule.start.size() != n || schedule.proc.size() != n) {
    throw std::invalid_argument("schedule does not match the tree size");
  }
  if (schedule.procs == 0) throw std::invalid_argument("schedule has zero processors");

  SimReport report;
  report.violation = first_violation(tree, schedule);
  report.feasible = report.violation.empty();

  struct Event {
    double time;
    bool allocation;  // false: release
    double amount;
  };
  std::vector<Event> events;
  events.reserve(2 * n);
  for (NodeId i = 0; i < n; ++i) {
    const double start = schedule.start[i];
    const double finish = start + tree.time(i);
    report.makespan = std::max(report.makespan, finish);
    events.push_back({start, true, tree.exec_size(i) + tree.out_size(i)});
    double released = tree.exec_size(i);
    for (NodeId c : tree.children(i)) released += tree.out_size(c);
    events.push_back({finish, false, released});
  }
  const bool releases_first = rule == TieRule::kReleaseFirst;
  std::stable_sort(events.begin(), events.end(), [&](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    // within a timestamp, the group applied first sorts first
    return (a.allocation != releases_first) && (b.allocation == releases_first);
  });

  double memory = 0.0;
  double peak = 0.0;
  for (std::size_t k = 0; k < events.size();) {
    const double t = events[k].time;
    bool first_group = true;
    for (; k < events.size() && events[k].time == t; ++k) {
      const Event& e = events[k];
      const bool in_first_group = e.allocation != releases_first;
      if (!in_first_group && first_group) {
        // Transient between the two groups: only visible when allocations
        // are applied before releases.
        if (!releases_first) peak = std::max(peak, memory);
        first_group = false;
      }
      memory += e.allocation ? e.amount : -e.amount;
    }
    if (!releases_first) peak = std::max(peak, memory);
    if (report.trace.empty() || report.trace.back().memory != memory) report.trace.push_back({t, memory});
  }
  for (const TracePoint& pt : report.trace) peak = std::max(peak, pt.memory);
  report.peak_memory = peak;
  return report;
}

std::vector<TracePoint> memory_trace(const TaskTree& tree, const Schedule& schedule) {
  return check_schedule(tree, schedule).trace;
}

}  // namespace treesched

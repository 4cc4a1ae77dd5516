#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treesched {

/// Zero-based node index. Files and user-facing output use index + 1.
using NodeId = std::size_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Raised by parse_tree; carries the 1-based line number of the offending
/// input line (0 when the problem is global, e.g. a missing root).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Rooted in-tree of tasks. Each node i carries a processing time, the size
/// of its execution file (resident only while i runs) and the size of its
/// output file (resident from the start of i until its parent completes).
///
/// Immutable after construction. Children are stored in ascending id order.
class TaskTree {
 public:
  struct Node {
    NodeId parent = kNoNode;
    double time = 0.0;
    double exec_size = 0.0;
    double out_size = 0.0;
  };

  /// Validates and builds. Throws std::invalid_argument on an empty node
  /// list, out-of-range parents, zero or multiple roots, cycles, or
  /// negative/non-finite weights.
  explicit TaskTree(std::vector<Node> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return root_; }

  NodeId parent(NodeId i) const { return nodes_[i].parent; }
  const std::vector<NodeId>& children(NodeId i) const { return children_[i]; }
  bool is_leaf(NodeId i) const { return children_[i].empty(); }

  double time(NodeId i) const { return nodes_[i].time; }
  double exec_size(NodeId i) const { return nodes_[i].exec_size; }
  double out_size(NodeId i) const { return nodes_[i].out_size; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// Memory needed while node i runs: its inputs, execution file and output.
  double node_footprint(NodeId i) const;

  /// Nodes ordered so that every node precedes its parent (reverse BFS).
  const std::vector<NodeId>& bottom_up() const noexcept { return bottom_up_; }

  /// Edge count from the root.
  std::size_t depth(NodeId i) const { return depth_[i]; }

  std::size_t leaf_count() const;
  double total_time() const;

  /// True iff every node has f = 1, n = 0, w = 1.
  bool is_pebble() const;

  friend bool operator==(const TaskTree& a, const TaskTree& b);

 private:
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> bottom_up_;
  std::vector<std::size_t> depth_;
  NodeId root_ = kNoNode;
};

inline bool operator==(const TaskTree::Node& a, const TaskTree::Node& b) {
  return a.parent == b.parent && a.time == b.time && a.exec_size == b.exec_size &&
         a.out_size == b.out_size;
}

/// Incremental construction helper used by the generators.
class TreeBuilder {
 public:
  NodeId add(NodeId parent, double time, double exec_size, double out_size) {
    nodes_.push_back({parent, time, exec_size, out_size});
    return nodes_.size() - 1;
  }
  NodeId add_pebble(NodeId parent) { return add(parent, 1.0, 0.0, 1.0); }
  std::size_t size() const noexcept { return nodes_.size(); }
  TaskTree build() && { return TaskTree(std::move(nodes_)); }

 private:
  std::vector<TaskTree::Node> nodes_;
};

/// Text format: '#' comment lines, a node count, then one line
/// "id parent w n f" per node with parent 0 for the root.
TaskTree parse_tree(std::istream& in);
TaskTree parse_tree(std::string_view text);
TaskTree read_tree_file(const std::string& path);

void serialize_tree(std::ostream& out, const TaskTree& tree);
std::string serialize_tree(const TaskTree& tree);

/// 17 significant digits ("%.17g"); round-trips every double.
std::string format_real(double value);

}  // namespace treesched

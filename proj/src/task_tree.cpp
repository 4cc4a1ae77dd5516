#include "treesched/task_tree.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace treesched {

namespace {

bool valid_weight(double v) { return std::isfinite(v) && v >= 0.0; }

// Breadth-first order from the root; shorter than size() when some node is
// not reachable, which for parent-linked nodes means a cycle.
std::vector<NodeId> bfs_order(NodeId root, const std::vector<std::vector<NodeId>>& children) {
  std::vector<NodeId> order;
  order.reserve(children.size());
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId c : children[order[head]]) order.push_back(c);
  }
  return order;
}

}  // namespace

TaskTree::TaskTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  if (n == 0) throw std::invalid_argument("tree must have at least one node");

  children_.assign(n, {});
  for (NodeId i = 0; i < n; ++i) {
    const Node& node = nodes_[i];
    if (!valid_weight(node.time) || !valid_weight(node.exec_size) || !valid_weight(node.out_size)) {
      throw std::invalid_argument("node " + std::to_string(i + 1) + ": weights must be finite and >= 0");
    }
    if (node.parent == kNoNode) {
      if (root_ != kNoNode) {
        throw std::invalid_argument("multiple roots: " + std::to_string(root_ + 1) + " and " +
                                    std::to_string(i + 1));
      }
      root_ = i;
    } else if (node.parent >= n) {
      throw std::invalid_argument("node " + std::to_string(i + 1) + ": parent out of range");
    } else {
      children_[node.parent].push_back(i);
    }
  }
  if (root_ == kNoNode) throw std::invalid_argument("tree has no root");

  std::vector<NodeId> order = bfs_order(root_, children_);
  if (order.size() != n) throw std::invalid_argument("parent links contain a cycle");

  depth_.assign(n, 0);
  for (NodeId i : order) {
    if (i != root_) depth_[i] = depth_[nodes_[i].parent] + 1;
  }
  bottom_up_.assign(order.rbegin(), order.rend());
}

double TaskTree::node_footprint(NodeId i) const {
  double inputs = 0.0;
  for (NodeId c : children_[i]) inputs += nodes_[c].out_size;
  return inputs + nodes_[i].exec_size + nodes_[i].out_size;
}

std::size_t TaskTree::leaf_count() const {
  std::size_t count = 0;
  for (const auto& c : children_) count += c.empty() ? 1 : 0;
  return count;
}

double TaskTree::total_time() const {
  double total = 0.0;
  for (const Node& node : nodes_) total += node.time;
  return total;
}

bool TaskTree::is_pebble() const {
  for (const Node& node : nodes_) {
    if (node.time != 1.0 || node.exec_size != 0.0 || node.out_size != 1.0) return false;
  }
  return true;
}

bool operator==(const TaskTree& a, const TaskTree& b) { return a.nodes_ == b.nodes_; }

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_blank_or_comment(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t' && ch != '\r') return false;
  }
  return true;
}

}  // namespace

TaskTree parse_tree(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  bool have_count = false;

  std::vector<TaskTree::Node> nodes;
  std::vector<std::size_t> node_line;  // source line of each node, 0 = unseen
  std::size_t seen = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto fields = split_fields(line);

    if (!have_count) {
      if (fields.size() != 1 || !parse_number(fields[0], count) || count == 0) {
        throw ParseError(line_no, "expected a positive node count");
      }
      have_count = true;
      nodes.assign(count, {});
      node_line.assign(count, 0);
      continue;
    }

    if (fields.size() != 5) throw ParseError(line_no, "expected 'id parent w n f'");
    std::size_t id = 0;
    std::size_t parent = 0;
    double w = 0.0, n = 0.0, f = 0.0;
    if (!parse_number(fields[0], id) || !parse_number(fields[1], parent)) {
      throw ParseError(line_no, "malformed node id or parent id");
    }
    if (!parse_number(fields[2], w) || !parse_number(fields[3], n) || !parse_number(fields[4], f)) {
      throw ParseError(line_no, "malformed weight");
    }
    if (seen == count) throw ParseError(line_no, "more node lines than the declared count");
    if (id == 0 || id > count) throw ParseError(line_no, "node id out of range 1.." + std::to_string(count));
    if (parent > count) throw ParseError(line_no, "parent id out of range 0.." + std::to_string(count));
    if (node_line[id - 1] != 0) {
      throw ParseError(line_no, "duplicate node id " + std::to_string(id) + " (first on line " +
                                    std::to_string(node_line[id - 1]) + ")");
    }
    if (parent == id) throw ParseError(line_no, "cycle: node " + std::to_string(id) + " is its own parent");
    if (!valid_weight(w) || !valid_weight(n) || !valid_weight(f)) {
      throw ParseError(line_no, "weights must be finite and non-negative");
    }
    nodes[id - 1] = {parent == 0 ? kNoNode : parent - 1, w, n, f};
    node_line[id - 1] = line_no;
    ++seen;
  }

  if (!have_count) throw ParseError(0, "empty input: missing node count");
  if (seen != count) {
    throw ParseError(line_no, "expected " + std::to_string(count) + " node lines, found " + std::to_string(seen));
  }

  NodeId root = kNoNode;
  std::vector<std::vector<NodeId>> children(count);
  for (NodeId i = 0; i < count; ++i) {
    if (nodes[i].parent == kNoNode) {
      if (root != kNoNode) {
        throw ParseError(node_line[i], "multiple roots (first on line " + std::to_string(node_line[root]) + ")");
      }
      root = i;
    } else {
      children[nodes[i].parent].push_back(i);
    }
  }
  if (root == kNoNode) throw ParseError(0, "missing root (no node with parent 0)");

  auto order = bfs_order(root, children);
  if (order.size() != count) {
    std::vector<bool> reached(count, false);
    for (NodeId i : order) reached[i] = true;
    for (NodeId i = 0; i < count; ++i) {
      if (!reached[i]) {
        throw ParseError(node_line[i], "cycle: node " + std::to_string(i + 1) + " is not reachable from the root");
      }
    }
  }
  return TaskTree(std::move(nodes));
}

TaskTree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tree(in);
}

TaskTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_tree(in);
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void serialize_tree(std::ostream& out, const TaskTree& tree) {
  out << tree.size() << '\n';
  for (NodeId i = 0; i < tree.size(); ++i) {
    const NodeId parent = tree.parent(i);
    out << (i + 1) << ' ' << (parent == kNoNode ? 0 : parent + 1) << ' ' << format_real(tree.time(i)) << ' '
        << format_real(tree.exec_size(i)) << ' ' << format_real(tree.out_size(i)) << '\n';
  }
}

std::string serialize_tree(const TaskTree& tree) {
  std::ostringstream out;
  serialize_tree(out, tree);
  return out.str();
}

}  // namespace treesched

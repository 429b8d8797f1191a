#ifndef UNIREP_DEPGRAPH_HPP
#define UNIREP_DEPGRAPH_HPP

#include <algorithm>
#include <deque>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unirep/error.hpp"
#include "unirep/sentence.hpp"

namespace unirep {

/// A single-rooted, single-headed dependency tree over token positions.
/// Edges run head -> dependent.  Depths are computed eagerly at build time;
/// the valuation delta(node, start) is start + depth(node).
class DepGraph {
 public:
  static DepGraph build(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw graph_error("graph needs at least one node");
    std::vector<int> head(n, -1);
    std::vector<std::vector<int>> deps(n);
    for (auto [h, d] : edges) {
      if (h < 0 || h >= n || d < 0 || d >= n)
        throw graph_error("edge index out of range");
      if (h == d) throw graph_error("self-loop on node " + std::to_string(d));
      if (head[d] != -1)
        throw graph_error("multiple heads for node " + std::to_string(d));
      head[d] = h;
      deps[h].push_back(d);
    }
    int root = -1;
    for (int i = 0; i < n; ++i) {
      if (head[i] == -1) {
        if (root != -1)
          throw graph_error("multiple roots: " + std::to_string(root) +
                            " and " + std::to_string(i));
        root = i;
      }
    }
    if (root == -1) throw graph_error("no root (cycle through every node)");
    for (auto& ds : deps) std::sort(ds.begin(), ds.end());

    // Breadth-first from the root; anything unreached is a cycle or an island.
    std::vector<int> depth(n, -1);
    depth[root] = 0;
    std::deque<int> queue{root};
    int reached = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int d : deps[u]) {
        depth[d] = depth[u] + 1;
        queue.push_back(d);
        ++reached;
      }
    }
    if (reached != n)
      throw graph_error("graph is not a tree (cycle or disconnected part)");
    DepGraph g;
    g.n_ = n;
    g.head_ = std::move(head);
    g.deps_ = std::move(deps);
    g.root_ = root;
    g.depth_ = std::move(depth);
    return g;
  }

  int size() const { return n_; }
  int root() const { return root_; }

  bool has_edge(int h, int d) const {
    return d >= 0 && d < n_ && head_[d] == h;
  }

  /// Head of `node`, or nullopt for the root.
  std::optional<int> head_of(int node) const {
    check(node);
    if (head_[node] == -1) return std::nullopt;
    return head_[node];
  }

  const std::vector<int>& dependents(int node) const {
    check(node);
    return deps_[node];
  }

  /// Edges as (head, dependent), ordered by dependent.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int d = 0; d < n_; ++d)
      if (head_[d] != -1) out.emplace_back(head_[d], d);
    return out;
  }

  int delta(int node, int start = 0) const {
    check(node);
    if (start != 0 && start != 1)
      throw graph_error("delta start must be 0 or 1");
    return start + depth_[node];
  }

  std::vector<int> delta_map(int start = 0) const {
    std::vector<int> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = delta(i, start);
    return out;
  }

  friend bool operator==(const DepGraph& a, const DepGraph& b) {
    return a.n_ == b.n_ && a.head_ == b.head_;
  }
  friend bool operator!=(const DepGraph& a, const DepGraph& b) {
    return !(a == b);
  }

 private:
  void check(int node) const {
    if (node < 0 || node >= n_)
      throw graph_error("node index out of range: " + std::to_string(node));
  }

  int n_ = 0;
  std::vector<int> head_;
  std::vector<std::vector<int>> deps_;
  int root_ = 0;
  std::vector<int> depth_;
};

/// One member of a crossing pair.  dependent == -1 marks the virtual
/// root-projection edge (root attached beyond the right sentence edge).
struct CrossingEdge {
  int head;
  int dependent;
  bool root_projection() const { return dependent == -1; }
};

struct ProjectivityReport {
  bool projective = true;
  std::vector<std::pair<CrossingEdge, CrossingEdge>> crossings;
};

/// All pairs of edges whose intervals strictly interleave (a < c < b < d).
/// The root's projection edge takes part, as standard in non-projectivity
/// detection.
inline ProjectivityReport projectivity(const DepGraph& g) {
  struct Interval {
    int lo, hi;
    CrossingEdge edge;
  };
  std::vector<Interval> intervals;
  for (auto [h, d] : g.edges())
    intervals.push_back({std::min(h, d), std::max(h, d), CrossingEdge{h, d}});
  intervals.push_back({g.root(), g.size(), CrossingEdge{g.root(), -1}});

  ProjectivityReport report;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (std::size_t j = i + 1; j < intervals.size(); ++j) {
      const Interval& x = intervals[i];
      const Interval& y = intervals[j];
      bool cross = (x.lo < y.lo && y.lo < x.hi && x.hi < y.hi) ||
                   (y.lo < x.lo && x.lo < y.hi && y.hi < x.hi);
      if (cross) report.crossings.emplace_back(x.edge, y.edge);
    }
  }
  report.projective = report.crossings.empty();
  return report;
}

/// A dependency rule I(D1, ..., Dm * Di, ..., Dk): ordered dependents on
/// either side of the head symbol.  I(*) is the empty-lists case.
struct DepRule {
  std::string head_pos;
  std::vector<std::string> left_deps;
  std::vector<std::string> right_deps;

  bool is_leaf_rule() const { return left_deps.empty() && right_deps.empty(); }

  std::string print() const {
    std::string out = head_pos + "(";
    for (std::size_t i = 0; i < left_deps.size(); ++i) {
      if (i) out += ", ";
      out += left_deps[i];
    }
    out += left_deps.empty() ? "*" : " *";
    for (std::size_t i = 0; i < right_deps.size(); ++i) {
      out += i ? ", " : " ";
      out += right_deps[i];
    }
    out += ")";
    return out;
  }
};

/// Parse "V(Det1, N1 * Det2, N2)" or "I(*)".
inline DepRule parse_dep_rule(const std::string& text) {
  auto fail = [&](const std::string& what) {
    throw parse_error("dependency rule '" + text + "': " + what, 0);
  };
  std::size_t open = text.find('(');
  std::size_t close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    fail("expected HEAD(... * ...)");
  DepRule rule;
  rule.head_pos = text.substr(0, open);
  while (!rule.head_pos.empty() && rule.head_pos.back() == ' ')
    rule.head_pos.pop_back();
  if (rule.head_pos.empty()) fail("missing head symbol");
  std::string body = text.substr(open + 1, close - open - 1);
  std::size_t star = body.find('*');
  if (star == std::string::npos) fail("missing '*' separator");
  auto split = [](const std::string& part) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : part) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  rule.left_deps = split(body.substr(0, star));
  rule.right_deps = split(body.substr(star + 1));
  return rule;
}

struct NodeVerdict {
  int node;
  bool valid;
  std::string matched_rule;  // empty when invalid
  std::string note;
};

/// Order-sensitive rule check per node.  Leaves match I(*) for any head
/// symbol; a non-leaf is valid iff some rule for its POS lists exactly its
/// left and right dependent POS sequences.
inline std::vector<NodeVerdict> validate_rules(
    const DepGraph& g, const std::vector<std::string>& pos_of,
    const std::vector<DepRule>& rules) {
  if (static_cast<int>(pos_of.size()) != g.size())
    throw graph_error("pos_of size does not match graph");
  std::vector<NodeVerdict> verdicts;
  for (int node = 0; node < g.size(); ++node) {
    std::vector<std::string> left, right;
    for (int d : g.dependents(node))
      (d < node ? left : right).push_back(pos_of[d]);
    if (left.empty() && right.empty()) {
      verdicts.push_back({node, true, pos_of[node] + "(*)", ""});
      continue;
    }
    bool any_rule = false;
    bool matched = false;
    std::string which;
    for (const DepRule& r : rules) {
      if (r.head_pos != pos_of[node]) continue;
      any_rule = true;
      if (r.left_deps == left && r.right_deps == right) {
        matched = true;
        which = r.print();
        break;
      }
    }
    if (matched)
      verdicts.push_back({node, true, which, ""});
    else
      verdicts.push_back({node, false, "",
                          any_rule ? "no rule matches dependent sequence"
                                   : "no rule for POS " + pos_of[node]});
  }
  return verdicts;
}

struct ConlluResult {
  Sentence sentence{std::vector<Token>{Token{0, "_", "_"}}};
  DepGraph graph;
  std::vector<std::string> warnings;
};

/// CoNLL-U subset: consumes ID, FORM, UPOS, HEAD; skips multi-word-token
/// and empty-node lines with a warning.  Reads the first sentence block.
inline ConlluResult read_conllu(std::istream& in) {
  std::vector<Token> tokens;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> warnings;
  std::string line;
  std::size_t lineno = 0;
  bool saw_any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (saw_any) break;
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 10)
      throw io_error("conllu line " + std::to_string(lineno) +
                     ": expected 10 tab-separated columns, found " +
                     std::to_string(cols.size()));
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos) {
      warnings.push_back("line " + std::to_string(lineno) +
                         ": skipped multi-word token " + id);
      continue;
    }
    if (id.find('.') != std::string::npos) {
      warnings.push_back("line " + std::to_string(lineno) +
                         ": skipped empty node " + id);
      continue;
    }
    saw_any = true;
    int idx;
    int head;
    try {
      idx = std::stoi(id);
      head = std::stoi(cols[6]);
    } catch (const std::exception&) {
      throw io_error("conllu line " + std::to_string(lineno) +
                     ": bad ID or HEAD field");
    }
    if (idx != static_cast<int>(tokens.size()) + 1)
      throw io_error("conllu line " + std::to_string(lineno) +
                     ": non-consecutive token ID " + id);
    tokens.push_back(Token{idx - 1, cols[1], cols[3]});
    if (head > 0) edges.emplace_back(head - 1, idx - 1);
  }
  if (tokens.empty()) throw io_error("conllu input has no token lines");
  ConlluResult result;
  result.sentence = Sentence(std::move(tokens));
  result.graph = DepGraph::build(result.sentence.size(), edges);
  result.warnings = std::move(warnings);
  return result;
}

inline ConlluResult read_conllu_text(const std::string& text) {
  std::istringstream in(text);
  return read_conllu(in);
}

}  // namespace unirep

#endif

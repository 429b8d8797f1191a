#ifndef UNIREP_PSTREE_HPP
#define UNIREP_PSTREE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unirep/derivation.hpp"
#include "unirep/error.hpp"

namespace unirep {

/// A constituency node.  Yields may be non-contiguous: discontinuity shows
/// up as crossing branches, never as node sharing.
struct PSNode {
  std::string label;            // empty on leaf token nodes
  std::optional<int> token;     // set on leaves
  std::vector<PSNode> children; // ordered by minimum token index
  TokenSet yield = 0;

  bool is_leaf() const { return token.has_value(); }
  bool is_preterminal() const {
    return children.size() == 1 && children[0].is_leaf();
  }
};

struct PSGRule {
  std::string lhs;
  std::vector<std::string> rhs;

  std::string print() const {
    std::string out = lhs + " →";
    for (const std::string& r : rhs) out += " " + r;
    return out;
  }

  friend bool operator<(const PSGRule& a, const PSGRule& b) {
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  }
  friend bool operator==(const PSGRule& a, const PSGRule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Node labels for cg_to_psg.  Explicit entries first; the fallback labels
/// S as S, modifiers as their result, argument-seeking categories whose
/// result chain ends in S as VP, and atomic N as NP.
struct LabelConfig {
  std::map<std::string, std::string> categories;    // category notation -> label
  std::map<std::string, std::string> preterminals;  // POS handle -> preterminal
  std::map<std::string, std::string> projections;   // POS handle -> phrase label
  bool permissive = false;  // label unknown categories by their notation

  std::string category_label(const Category& c) const {
    auto it = categories.find(print_category(c));
    if (it != categories.end()) return it->second;
    if (c.is_atom()) {
      if (c.atom_name() == "S") return "S";
      if (c.atom_name() == "N") return "NP";
      if (permissive) return c.atom_name();
    } else {
      if (c.modifier_shaped()) return category_label(c.result());
      if (c.principal_atom().atom_name() == "S") return "VP";
      if (permissive) return print_category(c);
    }
    throw error("no label for category " + print_category(c));
  }

  std::string preterminal_label(const std::string& pos) const {
    auto it = preterminals.find(pos);
    if (it != preterminals.end()) return it->second;
    return pos;
  }

  std::optional<std::string> projection_label(const std::string& pos) const {
    auto it = projections.find(pos);
    if (it != projections.end()) return it->second;
    return std::nullopt;
  }
};

/// Builds the constituency tree for a complete derivation: tokens sit under
/// unary preterminals (plus configured unary projections), and every step
/// becomes one node labeled by its result category.
inline PSNode cg_to_psg(const CGDerivation& d, const LabelConfig& labels) {
  std::vector<PSNode> live;
  for (const Token& t : d.sentence.tokens) {
    PSNode leaf;
    leaf.token = t.index;
    leaf.yield = tokenset::single(t.index);
    PSNode pre;
    pre.label = labels.preterminal_label(t.pos);
    pre.yield = leaf.yield;
    pre.children.push_back(std::move(leaf));
    if (auto phrase = labels.projection_label(t.pos)) {
      PSNode proj;
      proj.label = *phrase;
      proj.yield = pre.yield;
      proj.children.push_back(std::move(pre));
      live.push_back(std::move(proj));
    } else {
      live.push_back(std::move(pre));
    }
  }

  for (const CGStep& s : d.steps) {
    auto find = [&](TokenSet tokens) -> std::size_t {
      for (std::size_t i = 0; i < live.size(); ++i)
        if (live[i].yield == tokens) return i;
      throw error("derivation step references a missing span");
    };
    std::size_t fi = find(s.functor.tokens);
    std::size_t ai = find(s.argument.tokens);
    PSNode node;
    node.label = labels.category_label(s.result.category);
    node.yield = s.result.tokens;
    PSNode f = std::move(live[fi]);
    PSNode a = std::move(live[ai]);
    if (tokenset::min_index(f.yield) < tokenset::min_index(a.yield)) {
      node.children.push_back(std::move(f));
      node.children.push_back(std::move(a));
    } else {
      node.children.push_back(std::move(a));
      node.children.push_back(std::move(f));
    }
    if (fi < ai) std::swap(fi, ai);
    live.erase(live.begin() + fi);
    live.erase(live.begin() + ai);
    live.push_back(std::move(node));
  }
  if (live.size() != 1) throw error("derivation does not cover the sentence");
  return std::move(live.front());
}

/// One rule per internal node (preterminals excluded), deduplicated.
inline std::set<PSGRule> extract_rules(const PSNode& t) {
  std::set<PSGRule> rules;
  struct Walker {
    std::set<PSGRule>& rules;
    void walk(const PSNode& n) {
      if (n.is_leaf() || n.is_preterminal()) return;
      PSGRule r;
      r.lhs = n.label;
      for (const PSNode& c : n.children) r.rhs.push_back(c.label);
      rules.insert(std::move(r));
      for (const PSNode& c : n.children) walk(c);
    }
  } walker{rules};
  walker.walk(t);
  return rules;
}

struct AlignmentEntry {
  std::string label;
  TokenSet yield = 0;
  int step_no = 0;
  std::string category;  // the derivation category decorating this node
};

struct AlignmentReport {
  bool pass = false;
  std::vector<AlignmentEntry> entries;
  std::vector<std::string> mismatches;
};

/// Maps every binary node to the derivation step with the same yield; the
/// verdict is pass iff that map is a bijection over steps.
inline AlignmentReport align(const PSNode& t, const CGDerivation& d) {
  AlignmentReport report;
  std::vector<const PSNode*> nodes;
  struct Walker {
    std::vector<const PSNode*>& nodes;
    void walk(const PSNode& n) {
      if (n.children.size() >= 2) nodes.push_back(&n);
      for (const PSNode& c : n.children) walk(c);
    }
  } walker{nodes};
  walker.walk(t);

  std::vector<bool> used(d.steps.size(), false);
  for (const PSNode* n : nodes) {
    bool matched = false;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      if (d.steps[i].result.tokens == n->yield) {
        if (used[i]) {
          report.mismatches.push_back("two nodes share the yield of step " +
                                      std::to_string(i + 1));
        }
        used[i] = true;
        matched = true;
        report.entries.push_back(
            {n->label, n->yield, static_cast<int>(i + 1),
             print_category(d.steps[i].result.category)});
        break;
      }
    }
    if (!matched) {
      std::string idx;
      for (int i : tokenset::to_indices(n->yield))
        idx += (idx.empty() ? "" : ",") + std::to_string(i);
      report.mismatches.push_back("node " + n->label + " {" + idx +
                                  "} matches no derivation step");
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i])
      report.mismatches.push_back("step " + std::to_string(i + 1) +
                                  " matches no tree node");
  report.pass = report.mismatches.empty();
  return report;
}

struct CrossingNode {
  std::string label;
  TokenSet yield = 0;
};

/// All node pairs whose yields interleave: disjoint sets with overlapping
/// hulls.  Empty iff the tree is drawable without crossing branches.
inline std::vector<std::pair<CrossingNode, CrossingNode>> crossing_report(
    const PSNode& t) {
  std::vector<CrossingNode> nodes;
  struct Walker {
    std::vector<CrossingNode>& nodes;
    void walk(const PSNode& n) {
      if (!n.is_leaf()) nodes.push_back({n.label, n.yield});
      for (const PSNode& c : n.children) walk(c);
    }
  } walker{nodes};
  walker.walk(t);

  std::vector<std::pair<CrossingNode, CrossingNode>> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      TokenSet x = nodes[i].yield;
      TokenSet y = nodes[j].yield;
      if (x & y) continue;  // nested or identical never cross
      bool hulls_overlap = tokenset::min_index(x) < tokenset::max_index(y) &&
                           tokenset::min_index(y) < tokenset::max_index(x);
      if (hulls_overlap) out.emplace_back(nodes[i], nodes[j]);
    }
  }
  return out;
}

/// Reading leaves in token order; must reproduce the sentence.
inline std::vector<int> leaf_order(const PSNode& t) {
  std::vector<int> out;
  struct Walker {
    std::vector<int>& out;
    void walk(const PSNode& n) {
      if (n.is_leaf()) out.push_back(*n.token);
      for (const PSNode& c : n.children) walk(c);
    }
  } walker{out};
  walker.walk(t);
  std::sort(out.begin(), out.end());
  return out;
}

/// Discontinuous bracket export: `(LABEL child ... child)`, leaves as
/// `index=form`.
inline std::string brackets(const PSNode& t, const Sentence& s) {
  if (t.is_leaf()) return std::to_string(*t.token) + "=" + s[*t.token].form;
  std::string out = "(" + t.label;
  for (const PSNode& c : t.children) out += " " + brackets(c, s);
  out += ")";
  return out;
}

}  // namespace unirep

#endif

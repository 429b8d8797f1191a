#ifndef UNIREP_CORRESPONDENCE_HPP
#define UNIREP_CORRESPONDENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unirep/depgraph.hpp"
#include "unirep/derivation.hpp"
#include "unirep/error.hpp"

namespace unirep {

/// One instance of the correspondence principle A(B*) v A(*B) == A|B for a
/// derivation step.  Direct when the functor-argument pair shares a
/// dependency edge; mediated when licensed through the dependency head of
/// the modifier-shaped member.
struct Equivalence {
  enum class Kind { direct, mediated };

  int step_no = 0;
  Kind kind = Kind::direct;
  int a = -1;      // the common word A
  int b_lhs = -1;  // DG-side B
  int b_rhs = -1;  // CG-side B
  std::optional<int> mediator;
  std::string dg_form, cg_form;          // token forms
  std::string dg_form_pos, cg_form_pos;  // POS forms

  std::string rendered() const { return dg_form + " ≡ " + cg_form; }
  std::string rendered_pos() const {
    return dg_form_pos + " ≡ " + cg_form_pos;
  }
};

namespace detail {

inline std::string dg_render(const Sentence& s, int head, int dep,
                             bool pos_form) {
  auto name = [&](int i) { return pos_form ? s[i].pos : s[i].form; };
  if (dep < head) return name(head) + "(" + name(dep) + "*)";
  return name(head) + "(*" + name(dep) + ")";
}

inline std::string cg_render(const Sentence& s, int functor, int arg,
                             Direction dir, bool pos_form) {
  auto name = [&](int i) { return pos_form ? s[i].pos : s[i].form; };
  if (dir == Direction::right) return name(functor) + "/" + name(arg);
  return name(arg) + "\\" + name(functor);
}

}  // namespace detail

/// Rewrites one derivation step's functor-argument pair as a dependency
/// relation.  The pair comes from slash/atom provenance; when no direct
/// edge joins it, the mediated case goes through the dependency head of
/// the modifier-shaped member.  Exactly one mediator hop is supported.
inline Equivalence dg_to_cg_step(const DepGraph& g, const CGStep& step,
                                 const Sentence& sentence,
                                 const std::vector<Category>& lexical_row) {
  auto [f_owner, a_owner] = step.cg_pair;
  Equivalence eq;
  eq.step_no = step.step_no;

  auto fill_forms = [&](int edge_head, int edge_dep) {
    eq.dg_form = detail::dg_render(sentence, edge_head, edge_dep, false);
    eq.dg_form_pos = detail::dg_render(sentence, edge_head, edge_dep, true);
    eq.cg_form =
        detail::cg_render(sentence, f_owner, a_owner, step.direction, false);
    eq.cg_form_pos =
        detail::cg_render(sentence, f_owner, a_owner, step.direction, true);
  };

  if (g.has_edge(f_owner, a_owner) || g.has_edge(a_owner, f_owner)) {
    eq.kind = Equivalence::Kind::direct;
    int edge_head = g.has_edge(f_owner, a_owner) ? f_owner : a_owner;
    int edge_dep = edge_head == f_owner ? a_owner : f_owner;
    // A is the left element of the rendered CG form, B the other word.
    eq.a = step.direction == Direction::right ? f_owner : a_owner;
    eq.b_lhs = eq.b_rhs = eq.a == f_owner ? a_owner : f_owner;
    fill_forms(edge_head, edge_dep);
    return eq;
  }

  // Mediated: B_rhs is the modifier-shaped lexeme of the pair.
  auto modifier_lex = [&](int tok) {
    return lexical_row.at(tok).modifier_shaped();
  };
  int b_rhs;
  if (modifier_lex(f_owner) && !modifier_lex(a_owner))
    b_rhs = f_owner;
  else if (modifier_lex(a_owner) && !modifier_lex(f_owner))
    b_rhs = a_owner;
  else if (modifier_lex(f_owner) && modifier_lex(a_owner))
    b_rhs = f_owner;  // prefer the functor side when both qualify
  else
    throw licensing_error(
        "step " + std::to_string(step.step_no) + ": pair (" +
        sentence[f_owner].form + ", " + sentence[a_owner].form +
        ") has no direct edge and neither member is modifier-shaped");

  int a_word = b_rhs == f_owner ? a_owner : f_owner;
  std::optional<int> mediator = g.head_of(b_rhs);
  if (!mediator)
    throw licensing_error("step " + std::to_string(step.step_no) +
                          ": mediator candidate " + sentence[b_rhs].form +
                          " is the dependency root");
  if (!g.has_edge(*mediator, a_word) && !g.has_edge(a_word, *mediator))
    throw licensing_error(
        "step " + std::to_string(step.step_no) + ": no licensing edge between " +
        sentence[*mediator].form + " and " + sentence[a_word].form +
        " (multi-hop mediation is not supported)");

  eq.kind = Equivalence::Kind::mediated;
  eq.a = a_word;
  eq.b_rhs = b_rhs;
  eq.b_lhs = *mediator;
  eq.mediator = mediator;
  int edge_head = g.has_edge(*mediator, a_word) ? *mediator : a_word;
  int edge_dep = edge_head == *mediator ? a_word : *mediator;
  fill_forms(edge_head, edge_dep);
  return eq;
}

/// One dependency edge per derivation step: for a modifier-shaped
/// cancellation the functor depends on the argument's head, otherwise the
/// argument's head depends on the functor's.  Combining all steps gives
/// the dependency graph.
inline DepGraph cg_to_dg(const CGDerivation& d) {
  std::vector<std::pair<int, int>> edges;
  for (const CGStep& s : d.steps) {
    int hf = s.functor.head;
    int ha = s.argument.head;
    if (s.modifier)
      edges.emplace_back(ha, hf);
    else
      edges.emplace_back(hf, ha);
  }
  try {
    return DepGraph::build(d.sentence.size(), edges);
  } catch (const graph_error& e) {
    throw graph_error(std::string("inconsistent derivation: ") + e.what());
  }
}

struct EquivalenceReport {
  bool pass = false;
  std::vector<Equivalence> equivalences;
  std::vector<std::string> failures;
  bool graphs_equal = false;
};

/// Runs dg_to_cg_step for every step and checks that the derivation's own
/// dependency graph equals the given one.
inline EquivalenceReport verify_equivalences(const DepGraph& g,
                                             const CGDerivation& d) {
  EquivalenceReport report;
  if (g.size() != d.sentence.size()) {
    report.failures.push_back("graph and derivation cover different sentences");
    return report;
  }
  for (const CGStep& s : d.steps) {
    try {
      report.equivalences.push_back(
          dg_to_cg_step(g, s, d.sentence, d.lexical_row));
    } catch (const licensing_error& e) {
      report.failures.push_back(e.what());
    }
  }
  try {
    report.graphs_equal = cg_to_dg(d) == g;
    if (!report.graphs_equal)
      report.failures.push_back(
          "derivation's dependency graph differs from the given graph");
  } catch (const graph_error& e) {
    report.failures.push_back(e.what());
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace unirep

#endif

#ifndef UNIREP_FIXTURE_HPP
#define UNIREP_FIXTURE_HPP

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "unirep/json_io.hpp"
#include "unirep/search.hpp"

namespace unirep {

/// One bundled analysis: a sentence, its lexical categories, the replay
/// script, and every expected artifact.  Fixtures are data, not code.
struct Fixture {
  enum class Kind { full, abbreviated };

  std::string name;
  Kind kind = Kind::full;

  // full fixtures
  Sentence sentence{std::vector<Token>{Token{0, "", ""}}};
  std::vector<Category> lexical_row;
  std::vector<ScriptStep> script;
  LabelConfig labels;
  std::vector<DepRule> dep_rules;

  // abbreviated fixtures
  std::vector<AbbrevColumn> columns;
  std::vector<AbbrevStep> abbrev_steps;

  json expected;  // whichever artifacts the fixture pins down
};

inline LabelConfig labels_from_json(const json& j) {
  LabelConfig cfg;
  if (j.contains("categories"))
    for (const auto& [k, v] : j.at("categories").items())
      cfg.categories[k] = v.get<std::string>();
  if (j.contains("preterminals"))
    for (const auto& [k, v] : j.at("preterminals").items())
      cfg.preterminals[k] = v.get<std::string>();
  if (j.contains("projections"))
    for (const auto& [k, v] : j.at("projections").items())
      cfg.projections[k] = v.get<std::string>();
  return cfg;
}

inline Fixture fixture_from_json(const json& j) {
  Fixture f;
  f.name = j.value("name", "unnamed");
  std::string kind = j.value("kind", "full");
  f.kind = kind == "abbreviated" ? Fixture::Kind::abbreviated
                                 : Fixture::Kind::full;
  if (f.kind == Fixture::Kind::full) {
    f.sentence = sentence_from_json(j.at("tokens"));
    for (const json& c : j.at("lexical_row"))
      f.lexical_row.push_back(parse_category(c.get<std::string>()));
    f.script = script_from_json(j.at("script"));
    if (j.contains("labels")) f.labels = labels_from_json(j.at("labels"));
    if (j.contains("dep_rules"))
      for (const json& r : j.at("dep_rules"))
        f.dep_rules.push_back(parse_dep_rule(r.get<std::string>()));
  } else {
    for (const json& c : j.at("columns")) {
      AbbrevColumn col;
      col.form = c.at("form").get<std::string>();
      if (c.contains("pos") && !c.at("pos").is_null())
        col.pos = c.at("pos").get<std::string>();
      if (c.contains("expr") && !c.at("expr").is_null())
        col.expr = parse_delta(c.at("expr").get<std::string>());
      f.columns.push_back(col);
    }
    if (j.contains("steps"))
      for (const json& s : j.at("steps"))
        f.abbrev_steps.push_back(AbbrevStep{s.at("functor").get<int>(),
                                            s.at("argument").get<int>()});
  }
  f.expected = j.value("expected", json::object());
  return f;
}

inline Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open fixture file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw io_error("fixture " + path + ": " + e.what());
  }
  try {
    return fixture_from_json(j);
  } catch (const std::exception& e) {
    throw io_error("fixture " + path + ": " + e.what());
  }
}

struct VerifyOutcome {
  bool pass = true;
  std::vector<std::string> lines;

  void ok(const std::string& what) { lines.push_back("ok        " + what); }
  void mismatch(const std::string& what, const std::string& detail) {
    pass = false;
    lines.push_back("MISMATCH  " + what + ": " + detail);
  }
};

namespace detail {

template <typename T>
void compare(VerifyOutcome& out, const std::string& what, const T& got,
             const T& expected) {
  if (got == expected) {
    out.ok(what);
    return;
  }
  std::ostringstream detail;
  detail << "expected " << expected << ", got " << got;
  out.mismatch(what, detail.str());
}

inline void compare_lists(VerifyOutcome& out, const std::string& what,
                          const std::vector<std::string>& got,
                          const std::vector<std::string>& expected) {
  if (got == expected) {
    out.ok(what);
    return;
  }
  std::string detail;
  for (std::size_t i = 0; i < std::max(got.size(), expected.size()); ++i) {
    std::string g = i < got.size() ? got[i] : "<none>";
    std::string e = i < expected.size() ? expected[i] : "<none>";
    if (g != e) {
      detail = "at index " + std::to_string(i) + ": expected '" + e +
               "', got '" + g + "'";
      break;
    }
  }
  out.mismatch(what, detail);
}

}  // namespace detail

/// Replays the fixture, runs the whole pipeline, and compares every artifact
/// the fixture pins down.
inline VerifyOutcome verify_fixture(const Fixture& f) {
  VerifyOutcome out;
  const json& exp = f.expected;

  if (f.kind == Fixture::Kind::abbreviated) {
    UnifiedTable t = abbreviated(f.columns, f.abbrev_steps);
    if (exp.contains("unified_final"))
      detail::compare(out, "unified final cell", print_delta(t.final_cell),
                      exp.at("unified_final").get<std::string>());
    if (exp.contains("rows")) {
      bool rows_ok = t.rows.size() == exp.at("rows").size();
      for (std::size_t r = 0; rows_ok && r < t.rows.size(); ++r) {
        const json& row = exp.at("rows").at(r);
        rows_ok = row.size() == t.rows[r].size();
        for (std::size_t c = 0; rows_ok && c < t.rows[r].size(); ++c) {
          bool has = t.rows[r][c].has_value();
          if (row.at(c).is_null())
            rows_ok = !has || t.placeholder[c];
          else
            rows_ok = has &&
                      print_delta(*t.rows[r][c]) == row.at(c).get<std::string>();
        }
      }
      if (rows_ok)
        out.ok("table rows");
      else
        out.mismatch("table rows", "rendered rows differ from expectation");
    }
    return out;
  }

  // 1. replay
  CGDerivation d = replay(f.sentence, f.lexical_row, f.script);
  if (exp.contains("final_category"))
    detail::compare(out, "final category", print_category(d.final.category),
                    exp.at("final_category").get<std::string>());
  if (exp.contains("step_categories")) {
    std::vector<std::string> got, want;
    for (const CGStep& s : d.steps)
      got.push_back(print_category(s.result.category));
    for (const json& c : exp.at("step_categories"))
      want.push_back(c.get<std::string>());
    detail::compare_lists(out, "per-step result categories", got, want);
  }
  if (exp.contains("wrapped_steps")) {
    std::vector<int> got, want;
    for (const CGStep& s : d.steps)
      if (s.wrapped) got.push_back(s.step_no);
    for (const json& w : exp.at("wrapped_steps")) want.push_back(w.get<int>());
    if (got == want)
      out.ok("wrapped steps");
    else
      out.mismatch("wrapped steps", "wrapping sites differ");
  }

  // 2. dependency graph
  DepGraph g = cg_to_dg(d);
  if (exp.contains("edges")) {
    auto edge_list = g.edges();
    std::set<std::pair<int, int>> got(edge_list.begin(), edge_list.end());
    std::set<std::pair<int, int>> want;
    for (const json& e : exp.at("edges"))
      want.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    if (got == want) {
      out.ok("dependency edges");
    } else {
      std::string diff;
      for (auto& e : want)
        if (!got.count(e))
          diff += " missing " + std::to_string(e.first) + "->" +
                  std::to_string(e.second);
      for (auto& e : got)
        if (!want.count(e))
          diff += " extra " + std::to_string(e.first) + "->" +
                  std::to_string(e.second);
      out.mismatch("dependency edges", diff.empty() ? "differ" : diff);
    }
  }
  if (exp.contains("root"))
    detail::compare(out, "dependency root", g.root(), exp.at("root").get<int>());
  if (exp.contains("delta")) {
    std::vector<int> want;
    for (const json& v : exp.at("delta")) want.push_back(v.get<int>());
    if (g.delta_map(0) == want)
      out.ok("delta valuation");
    else
      out.mismatch("delta valuation", "depth values differ");
  }
  if (exp.contains("projective"))
    detail::compare(out, "projectivity", projectivity(g).projective,
                    exp.at("projective").get<bool>());

  // 3. dependency rules
  if (!f.dep_rules.empty()) {
    std::vector<std::string> pos;
    for (const Token& t : f.sentence.tokens) pos.push_back(t.pos);
    bool all = true;
    std::string which;
    for (const NodeVerdict& v : validate_rules(g, pos, f.dep_rules))
      if (!v.valid) {
        all = false;
        which = "node " + std::to_string(v.node) + " (" + v.note + ")";
      }
    if (all)
      out.ok("dependency rules");
    else
      out.mismatch("dependency rules", which);
  }

  // 4. equivalences
  EquivalenceReport eq = verify_equivalences(g, d);
  if (eq.pass)
    out.ok("equivalence licensing and graph round-trip");
  else
    out.mismatch("equivalence licensing", eq.failures.front());
  if (exp.contains("equivalences")) {
    std::vector<std::string> got, want;
    for (const Equivalence& e : eq.equivalences) got.push_back(e.rendered());
    for (const json& s : exp.at("equivalences"))
      want.push_back(s.get<std::string>());
    detail::compare_lists(
        out, "equivalence renderings (" + std::to_string(got.size()) + ")",
        got, want);
  }
  if (exp.contains("equivalences_pos")) {
    std::vector<std::string> got, want;
    for (const Equivalence& e : eq.equivalences)
      got.push_back(e.rendered_pos());
    for (const json& s : exp.at("equivalences_pos"))
      want.push_back(s.get<std::string>());
    detail::compare_lists(out, "equivalence POS renderings", got, want);
  }
  if (exp.contains("equivalence_kinds")) {
    std::vector<std::string> got, want;
    for (const Equivalence& e : eq.equivalences)
      got.push_back(e.kind == Equivalence::Kind::direct ? "direct"
                                                        : "mediated");
    for (const json& s : exp.at("equivalence_kinds"))
      want.push_back(s.get<std::string>());
    detail::compare_lists(out, "equivalence kinds", got, want);
  }

  // 5. constituency
  if (exp.contains("psg_rules") || exp.contains("crossing")) {
    PSNode tree = cg_to_psg(d, f.labels);
    std::vector<int> leaves = leaf_order(tree);
    bool ordered = true;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (leaves[i] != static_cast<int>(i)) ordered = false;
    if (ordered)
      out.ok("leaf order");
    else
      out.mismatch("leaf order", "leaves do not reproduce the sentence");
    if (exp.contains("psg_rules")) {
      std::set<std::string> got;
      for (const PSGRule& r : extract_rules(tree)) got.insert(r.print());
      std::set<std::string> want;
      for (const json& r : exp.at("psg_rules"))
        want.insert(r.get<std::string>());
      if (got == want) {
        out.ok("extracted rules (" + std::to_string(got.size()) + ")");
      } else {
        std::string diff;
        for (const std::string& r : want)
          if (!got.count(r)) diff += " missing '" + r + "'";
        for (const std::string& r : got)
          if (!want.count(r)) diff += " extra '" + r + "'";
        out.mismatch("extracted rules", diff);
      }
    }
    if (exp.contains("crossing"))
      detail::compare(out, "crossing branches",
                      !crossing_report(tree).empty(),
                      exp.at("crossing").get<bool>());
    AlignmentReport al = align(tree, d);
    if (al.pass)
      out.ok("tree/derivation alignment");
    else
      out.mismatch("tree/derivation alignment", al.mismatches.front());
  }

  // 6. unified table
  if (eq.pass) {
    UnifiedTable t = build_unified(d, g);
    if (exp.contains("unified_row0")) {
      std::vector<std::string> got, want;
      for (const auto& cell : t.rows[0]) got.push_back(print_delta(*cell));
      for (const json& c : exp.at("unified_row0"))
        want.push_back(c.get<std::string>());
      detail::compare_lists(out, "unified row 0", got, want);
    }
    if (exp.contains("unified_final"))
      detail::compare(out, "unified final cell " + print_delta(t.final_cell),
                      print_delta(t.final_cell),
                      exp.at("unified_final").get<std::string>());
    if (read_dependencies(t) == g)
      out.ok("unified read-off round-trip");
    else
      out.mismatch("unified read-off round-trip",
                   "dependencies read off the table differ");
  }

  return out;
}

}  // namespace unirep

#endif

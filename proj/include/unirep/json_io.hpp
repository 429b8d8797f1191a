#ifndef UNIREP_JSON_IO_HPP
#define UNIREP_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "unirep/analysis.hpp"
#include "unirep/correspondence.hpp"
#include "unirep/depgraph.hpp"
#include "unirep/derivation.hpp"
#include "unirep/pstree.hpp"
#include "unirep/unified.hpp"

namespace unirep {

using json = nlohmann::json;

inline json sentence_to_json(const Sentence& s) {
  json out = json::array();
  for (const Token& t : s.tokens) out.push_back({{"form", t.form}, {"pos", t.pos}});
  return out;
}

inline Sentence sentence_from_json(const json& j) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const json& t : j) {
    std::string pos;
    if (t.contains("pos") && !t.at("pos").is_null())
      pos = t.at("pos").get<std::string>();
    items.emplace_back(t.at("form").get<std::string>(), pos);
  }
  return Sentence::of(items);
}

inline json derivation_to_json(const CGDerivation& d) {
  json steps = json::array();
  for (const CGStep& s : d.steps) {
    steps.push_back({
        {"step_no", s.step_no},
        {"functor", tokenset::to_indices(s.functor.tokens)},
        {"argument", tokenset::to_indices(s.argument.tokens)},
        {"functor_head", s.functor.head},
        {"argument_head", s.argument.head},
        {"direction", to_string(s.direction)},
        {"wrapped", s.wrapped},
        {"intervener_count", s.intervener_count},
        {"modifier", s.modifier},
        {"result_category", print_category(s.result.category)},
        {"result_span", tokenset::to_indices(s.result.tokens)},
    });
  }
  json row = json::array();
  for (const Category& c : d.lexical_row) row.push_back(print_category(c));
  return json{{"schema", "unirep/derivation/v1"},
              {"sentence", sentence_to_json(d.sentence)},
              {"lexical_row", row},
              {"steps", steps},
              {"final", {{"category", print_category(d.final.category)},
                         {"head", d.final.head}}}};
}

/// Rebuilds the derivation by replaying the recorded step references; every
/// derived field is recomputed, so a tampered file fails loudly.
inline CGDerivation derivation_from_json(const json& j) {
  Sentence s = sentence_from_json(j.at("sentence"));
  std::vector<Category> row;
  for (const json& c : j.at("lexical_row"))
    row.push_back(parse_category(c.get<std::string>()));
  std::vector<ScriptStep> script;
  for (const json& st : j.at("steps"))
    script.push_back(ScriptStep{st.at("functor_head").get<int>(),
                                st.at("argument_head").get<int>()});
  return replay(s, row, script);
}

inline std::vector<ScriptStep> script_from_json(const json& j) {
  std::vector<ScriptStep> script;
  for (const json& st : j)
    script.push_back(
        ScriptStep{st.at("functor").get<int>(), st.at("argument").get<int>()});
  return script;
}

inline json graph_to_json(const DepGraph& g, const Sentence* s = nullptr,
                          int delta_start = 0) {
  json edges = json::array();
  for (auto [h, d] : g.edges()) edges.push_back({h, d});
  json delta = json::array();
  for (int i = 0; i < g.size(); ++i) delta.push_back(g.delta(i, delta_start));
  json out{{"schema", "unirep/graph/v1"},
           {"n", g.size()},
           {"edges", edges},
           {"root", g.root()},
           {"delta_start", delta_start},
           {"delta", delta}};
  if (s) out["tokens"] = sentence_to_json(*s);
  return out;
}

inline DepGraph graph_from_json(const json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const json& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return DepGraph::build(j.at("n").get<int>(), edges);
}

inline json equivalences_to_json(const EquivalenceReport& r,
                                 const Sentence& s) {
  json list = json::array();
  for (const Equivalence& e : r.equivalences) {
    json item{{"step_no", e.step_no},
              {"kind", e.kind == Equivalence::Kind::direct ? "direct"
                                                           : "mediated"},
              {"a", e.a},
              {"b_lhs", e.b_lhs},
              {"b_rhs", e.b_rhs},
              {"dg_form", e.dg_form},
              {"cg_form", e.cg_form},
              {"dg_form_pos", e.dg_form_pos},
              {"cg_form_pos", e.cg_form_pos},
              {"rendered", e.rendered()},
              {"rendered_pos", e.rendered_pos()}};
    if (e.mediator) item["mediator"] = *e.mediator;
    list.push_back(item);
  }
  return json{{"schema", "unirep/equivalences/v1"},
              {"sentence", sentence_to_json(s)},
              {"pass", r.pass},
              {"equivalences", list},
              {"failures", r.failures}};
}

inline json pstree_to_json(const PSNode& n, const Sentence& s) {
  json out;
  if (n.is_leaf()) {
    out["token"] = *n.token;
    out["form"] = s[*n.token].form;
  } else {
    out["label"] = n.label;
    out["yield"] = tokenset::to_indices(n.yield);
    json kids = json::array();
    for (const PSNode& c : n.children) kids.push_back(pstree_to_json(c, s));
    out["children"] = kids;
  }
  return out;
}

inline json rules_to_json(const std::set<PSGRule>& rules) {
  json out = json::array();
  for (const PSGRule& r : rules) {
    json rhs = json::array();
    for (const std::string& x : r.rhs) rhs.push_back(x);
    out.push_back({{"lhs", r.lhs}, {"rhs", rhs}, {"rendered", r.print()}});
  }
  return json{{"schema", "unirep/rules/v1"}, {"rules", out}};
}

inline json delta_expr_to_json(const DeltaExpr& e, int delta_start = 0) {
  if (e.is_term()) {
    json out{{"delta_of", e.pos()}};
    if (e.token() >= 0) out["token"] = e.token();
    if (e.value()) out["value"] = *e.value() + delta_start;
    return out;
  }
  return json{{"slash", e.is_rightward() ? "/" : "\\"},
              {"result", delta_expr_to_json(e.result(), delta_start)},
              {"argument", delta_expr_to_json(e.argument(), delta_start)}};
}

inline json table_to_json(const UnifiedTable& t) {
  json columns = json::array();
  for (int c = 0; c < t.column_count(); ++c) {
    columns.push_back({{"form", t.columns[c].form},
                       {"pos", t.columns[c].pos},
                       {"placeholder", static_cast<bool>(t.placeholder[c])}});
  }
  json rows = json::array();
  for (const auto& row : t.rows) {
    json cells = json::array();
    for (const auto& cell : row) {
      if (cell)
        cells.push_back({{"expr", print_delta(*cell)},
                         {"tree", delta_expr_to_json(*cell, t.delta_start)}});
      else
        cells.push_back(nullptr);
    }
    rows.push_back(cells);
  }
  json steps = json::array();
  for (const UnifiedStep& s : t.steps)
    steps.push_back({{"step_no", s.step_no},
                     {"functor_col", s.functor_col},
                     {"argument_col", s.argument_col},
                     {"result_col", s.result_col},
                     {"direction", to_string(s.direction)},
                     {"modifier", s.modifier},
                     {"wrapped", s.wrapped}});
  json out{{"schema", "unirep/table/v1"},
           {"columns", columns},
           {"rows", rows},
           {"steps", steps},
           {"final", print_delta(t.final_cell)}};
  if (t.delta_values) {
    out["delta_start"] = t.delta_start;
    json shifted = json::array();
    for (int v : *t.delta_values) shifted.push_back(v + t.delta_start);
    out["delta"] = shifted;
  }
  return out;
}

inline json complexity_to_json(const ComplexityReport& r) {
  json out{{"schema", "unirep/complexity/v1"},
           {"formalisms", r.n_formalisms},
           {"sentences", r.n_sentences},
           {"representation_count", r.representation_count.to_string()},
           {"mapping_count_per_item", r.mapping_count_per_item.to_string()},
           {"total_mappings", r.total_mappings.to_string()}};
  if (r.footnote_variant)
    out["footnote_variant"] = r.footnote_variant->to_string();
  return out;
}

/// Minimal structural validation against the shipped schema subset:
/// type / required / properties / items.
inline bool validate_schema(const json& schema, const json& value,
                            std::string* why = nullptr) {
  auto fail = [&](const std::string& what) {
    if (why) *why = what;
    return false;
  };
  if (schema.contains("type")) {
    const std::string type = schema.at("type").get<std::string>();
    if (type == "object" && !value.is_object()) return fail("expected object");
    if (type == "array" && !value.is_array()) return fail("expected array");
    if (type == "string" && !value.is_string()) return fail("expected string");
    if (type == "integer" && !value.is_number_integer())
      return fail("expected integer");
    if (type == "number" && !value.is_number()) return fail("expected number");
    if (type == "boolean" && !value.is_boolean())
      return fail("expected boolean");
  }
  if (schema.contains("required")) {
    for (const json& key : schema.at("required"))
      if (!value.contains(key.get<std::string>()))
        return fail("missing required key " + key.get<std::string>());
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items()) {
      if (!value.contains(key)) continue;
      std::string inner;
      if (!validate_schema(sub, value.at(key), &inner))
        return fail(key + ": " + inner);
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const json& item : value) {
      if (item.is_null()) continue;
      std::string inner;
      if (!validate_schema(schema.at("items"), item, &inner))
        return fail("item: " + inner);
    }
  }
  return true;
}

}  // namespace unirep

#endif

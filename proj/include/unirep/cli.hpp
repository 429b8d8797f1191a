#ifndef UNIREP_CLI_HPP
#define UNIREP_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unirep/fixture.hpp"
#include "unirep/json_io.hpp"
#include "unirep/search.hpp"
#include "unirep/unified.hpp"

namespace unirep::cli {

// Exit-code contract: 0 pass, 1 semantic failure, 2 input failure.
inline constexpr int kOk = 0;
inline constexpr int kSemanticFailure = 1;
inline constexpr int kInputFailure = 2;

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  return j;
}

inline Lexicon read_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open lexicon " + path);
  return read_lexicon(in);
}

inline Sentence sentence_from_args(const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const std::string& t : tokens) {
    std::size_t colon = t.rfind(':');
    if (colon == std::string::npos)
      items.emplace_back(t, "");
    else
      items.emplace_back(t.substr(0, colon), t.substr(colon + 1));
  }
  return Sentence::of(items);
}

inline std::uint64_t search_budget() {
  if (const char* env = std::getenv("UNIREP_SEARCH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw io_error("UNIREP_SEARCH_BUDGET must be a positive integer");
  }
  return SearchOptions{}.budget;
}

inline void emit(std::ostream& out, const std::string& output_path,
                 const std::string& text) {
  if (output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output_path);
  if (!f) throw io_error("cannot write " + output_path);
  f << text;
}

struct Common {
  std::string format = "text";
  std::string output;
  std::string lexicon;
  int delta_start = 0;
};

inline int cmd_derive(const Common& common, const std::string& goal,
                      int max_wrapped, const std::vector<std::string>& tokens,
                      std::ostream& out, std::ostream& err) {
  if (common.lexicon.empty()) {
    err << "derive: --lexicon is required\n";
    return kInputFailure;
  }
  Lexicon lex = read_lexicon_file(common.lexicon);
  Sentence s = sentence_from_args(tokens);
  for (const Token& t : s.tokens) {
    if (lex.lookup(t.form, t.pos).empty()) {
      err << "derive: no lexicon entry covers '" << t.form << "'\n";
      return kInputFailure;
    }
  }
  SearchOptions opts;
  opts.budget = search_budget();
  if (max_wrapped >= 0) opts.max_wrapped = max_wrapped;
  auto results = derive(s, lex, parse_category(goal), opts);
  if (results.empty()) {
    err << "derive: no derivation reaches " << goal << "\n";
    return kSemanticFailure;
  }
  if (common.format == "json") {
    json arr = json::array();
    for (const CGDerivation& d : results) arr.push_back(derivation_to_json(d));
    emit(out, common.output, arr.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << results.size() << " derivation(s)\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const CGDerivation& d = results[i];
      text << "#" << (i + 1) << " wrapped=" << d.wrapped_count() << " steps:";
      for (const CGStep& st : d.steps)
        text << " " << st.functor.head << (st.wrapped ? "~" : "+")
             << st.argument.head;
      text << " -> " << print_category(d.final.category) << "\n";
    }
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline int cmd_replay(const Common& common, const std::string& script_path,
                      const std::vector<std::string>& tokens,
                      std::ostream& out, std::ostream& err) {
  if (common.lexicon.empty()) {
    err << "replay: --lexicon is required\n";
    return kInputFailure;
  }
  Lexicon lex = read_lexicon_file(common.lexicon);
  Sentence s = sentence_from_args(tokens);
  std::vector<Category> row;
  for (const Token& t : s.tokens) {
    auto entries = lex.lookup(t.form, t.pos);
    if (entries.empty()) {
      err << "replay: no lexicon entry covers '" << t.form << "'\n";
      return kInputFailure;
    }
    if (entries.size() > 1) {
      err << "replay: ambiguous entry for '" << t.form
          << "'; disambiguate with form:pos\n";
      return kInputFailure;
    }
    row.push_back(entries.front());
  }
  auto script = script_from_json(read_json_file(script_path));
  CGDerivation d = replay(s, row, script);
  if (common.format == "json")
    emit(out, common.output, derivation_to_json(d).dump(2) + "\n");
  else {
    std::ostringstream text;
    for (const CGStep& st : d.steps)
      text << "step " << st.step_no << ": " << st.functor.head
           << (st.wrapped ? " ~ " : " + ") << st.argument.head << " -> "
           << print_category(st.result.category)
           << (st.wrapped
                   ? " (wrapped over " + std::to_string(st.intervener_count) +
                         ")"
                   : "")
           << "\n";
    text << "final: " << print_category(d.final.category) << "\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline int cmd_verify(const std::vector<std::string>& paths, std::ostream& out,
                      std::ostream& err) {
  bool all_pass = true;
  for (const std::string& path : paths) {
    Fixture f = load_fixture(path);
    VerifyOutcome outcome = verify_fixture(f);
    out << "fixture " << f.name << "\n";
    for (const std::string& line : outcome.lines) out << "  " << line << "\n";
    out << (outcome.pass ? "  PASS" : "  FAIL") << "\n";
    all_pass = all_pass && outcome.pass;
  }
  (void)err;
  return all_pass ? kOk : kSemanticFailure;
}

inline int cmd_dg2cg(const Common& common, const std::string& input,
                     std::ostream& out, std::ostream& err) {
  std::ifstream in(input);
  if (!in) throw io_error("cannot open " + input);
  ConlluResult r = read_conllu(in);
  for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
  // Per-edge correspondence instances with the neutral direction sign.
  json eqs = json::array();
  for (auto [h, d] : r.graph.edges()) {
    std::string dg = unirep::detail::dg_render(r.sentence, h, d, false);
    std::string cg = r.sentence[h].form + "|" + r.sentence[d].form;
    eqs.push_back({{"head", h},
                   {"dependent", d},
                   {"dg_form", dg},
                   {"cg_form", cg},
                   {"rendered", dg + " \u2261 " + cg}});
  }
  if (common.format == "json") {
    json j = graph_to_json(r.graph, &r.sentence, common.delta_start);
    j["equivalences"] = eqs;
    emit(out, common.output, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "root: " << r.sentence[r.graph.root()].form << "\n";
    for (int i = 0; i < r.graph.size(); ++i)
      text << "\u03b4(" << r.sentence[i].form
           << ") = " << r.graph.delta(i, common.delta_start) << "\n";
    for (const json& e : eqs)
      text << e.at("rendered").get<std::string>() << "\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline int cmd_cg2dg(const Common& common, const std::string& derivation_path,
                     std::ostream& out, std::ostream&) {
  CGDerivation d = derivation_from_json(read_json_file(derivation_path));
  DepGraph g = cg_to_dg(d);
  if (common.format == "json") {
    emit(out, common.output,
         graph_to_json(g, &d.sentence, common.delta_start).dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "root: " << d.sentence[g.root()].form << "\n";
    for (auto [h, dep] : g.edges())
      text << d.sentence[h].form << " -> " << d.sentence[dep].form << "\n";
    for (int i = 0; i < g.size(); ++i)
      text << "\u03b4(" << d.sentence[i].form
           << ") = " << g.delta(i, common.delta_start) << "\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline LabelConfig labels_from_file(const std::string& path) {
  if (path.empty()) return LabelConfig{};
  return labels_from_json(read_json_file(path));
}

inline int cmd_cg2psg(const Common& common, const std::string& derivation_path,
                      const std::string& labels_path, std::ostream& out,
                      std::ostream& err) {
  CGDerivation d = derivation_from_json(read_json_file(derivation_path));
  PSNode tree = cg_to_psg(d, labels_from_file(labels_path));
  if (common.format == "json")
    emit(out, common.output, pstree_to_json(tree, d.sentence).dump(2) + "\n");
  else if (common.format == "text" || common.format == "brackets")
    emit(out, common.output, brackets(tree, d.sentence) + "\n");
  else {
    err << "cg2psg: unsupported format " << common.format << "\n";
    return kInputFailure;
  }
  return kOk;
}

inline int cmd_rules(const Common& common, const std::string& derivation_path,
                     const std::string& labels_path, std::ostream& out,
                     std::ostream&) {
  CGDerivation d = derivation_from_json(read_json_file(derivation_path));
  std::set<PSGRule> rules =
      extract_rules(cg_to_psg(d, labels_from_file(labels_path)));
  if (common.format == "json")
    emit(out, common.output, rules_to_json(rules).dump(2) + "\n");
  else if (common.format == "latex") {
    std::ostringstream text;
    text << "\\begin{tabular}{l}\n";
    for (const PSGRule& r : rules) {
      text << "$" << r.lhs << " \\rightarrow";
      for (const std::string& x : r.rhs) text << " " << x;
      text << "$ \\\\\n";
    }
    text << "\\end{tabular}\n";
    emit(out, common.output, text.str());
  } else {
    std::ostringstream text;
    for (const PSGRule& r : rules) text << r.print() << "\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline int cmd_unify(const Common& common, const std::string& derivation_path,
                     const std::string& graph_path, std::ostream& out,
                     std::ostream& err) {
  CGDerivation d = derivation_from_json(read_json_file(derivation_path));
  DepGraph g = graph_path.empty() ? cg_to_dg(d)
                                  : graph_from_json(read_json_file(graph_path));
  UnifiedTable t = build_unified(d, g);
  t.delta_start = common.delta_start;
  if (common.format == "json")
    emit(out, common.output, table_to_json(t).dump(2) + "\n");
  else if (common.format == "latex")
    emit(out, common.output, render_latex(t));
  else if (common.format == "text")
    emit(out, common.output, render_text(t));
  else {
    err << "unify: unsupported format " << common.format << "\n";
    return kInputFailure;
  }
  return kOk;
}

inline int cmd_complexity(const Common& common, std::uint64_t formalisms,
                          std::uint64_t sentences,
                          const std::string& labels_csv, bool enumerate,
                          std::ostream& out, std::ostream&) {
  ComplexityReport r = complexity_report(formalisms, sentences);
  json j = complexity_to_json(r);
  std::vector<std::string> labels;
  if (enumerate) {
    std::string cur;
    for (char c : labels_csv + ",") {
      if (c == ',') {
        if (!cur.empty()) labels.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (labels.size() != formalisms)
      throw io_error("--labels must list exactly " +
                     std::to_string(formalisms) + " formalisms");
    json tuples = json::array();
    for (const auto& tuple : enumerate_assignments(labels, sentences)) {
      std::string rendered;
      for (const std::string& x : tuple)
        rendered += (rendered.empty() ? "" : ", ") + x;
      tuples.push_back("[" + rendered + "]");
    }
    j["assignments"] = tuples;
  }
  if (common.format == "json") {
    emit(out, common.output, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "formalisms             " << formalisms << "\n";
    text << "sentences              " << sentences << "\n";
    text << "representations        " << r.representation_count.to_string()
         << "\n";
    if (r.footnote_variant)
      text << "footnote variant       " << r.footnote_variant->to_string()
           << "\n";
    text << "mappings per item      " << r.mapping_count_per_item.to_string()
         << "\n";
    text << "total mappings         " << r.total_mappings.to_string() << "\n";
    if (j.contains("assignments"))
      for (const json& t : j.at("assignments"))
        text << t.get<std::string>() << "\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

inline int cmd_sequnion(const Common& common, const std::string& left,
                        const std::string& right, std::ostream& out,
                        std::ostream&) {
  auto split = [](const std::string& csv) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : csv + ",") {
      if (c == ',') {
        if (!cur.empty()) items.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    return items;
  };
  auto result = sequence_union(split(left), split(right));
  if (common.format == "json") {
    json j{{"schema", "unirep/sequnion/v1"},
           {"count", result.size()},
           {"sequences", json::array()}};
    for (const auto& seq : result) j["sequences"].push_back(seq);
    emit(out, common.output, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    for (const auto& seq : result) {
      std::string line;
      for (const std::string& x : seq) line += (line.empty() ? "" : " ") + x;
      text << line << "\n";
    }
    text << result.size() << " sequences\n";
    emit(out, common.output, text.str());
  }
  return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"unified syntactic representation toolkit", "unirep"};
  app.require_subcommand(1);

  detail::Common common;
  app.add_option("--format", common.format, "text|json|latex|brackets")
      ->capture_default_str();
  app.add_option("--output", common.output, "write to file instead of stdout");
  app.add_option("--lexicon", common.lexicon, "lexicon file");
  app.add_option("--delta-start", common.delta_start,
                 "delta valuation start (0 or 1)")
      ->check(CLI::IsMember({0, 1}));

  std::string goal = "S";
  int max_wrapped = -1;
  std::vector<std::string> tokens;
  CLI::App* derive_cmd =
      app.add_subcommand("derive", "search derivations for a sentence");
  derive_cmd->add_option("--goal", goal, "goal category")->capture_default_str();
  derive_cmd->add_option("--max-wrapped", max_wrapped,
                         "keep derivations with at most this many wraps");
  derive_cmd->add_option("tokens", tokens, "tokens, form or form:pos")
      ->required();

  std::string script_path;
  std::vector<std::string> replay_tokens;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "replay a fixture script");
  replay_cmd->add_option("--script", script_path, "replay script JSON")
      ->required();
  replay_cmd->add_option("tokens", replay_tokens, "tokens, form or form:pos")
      ->required();

  std::vector<std::string> fixture_paths;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the full pipeline on fixtures");
  verify_cmd->add_option("fixtures", fixture_paths, "fixture JSON files")
      ->required();

  std::string conllu_path;
  CLI::App* dg2cg_cmd =
      app.add_subcommand("dg2cg", "dependency graph to correspondence report");
  dg2cg_cmd->add_option("input", conllu_path, "CoNLL-U file")->required();

  std::string derivation_path;
  CLI::App* cg2dg_cmd =
      app.add_subcommand("cg2dg", "derivation to dependency graph");
  cg2dg_cmd->add_option("derivation", derivation_path, "derivation JSON")
      ->required();

  std::string psg_derivation, labels_path;
  CLI::App* cg2psg_cmd =
      app.add_subcommand("cg2psg", "derivation to constituency tree");
  cg2psg_cmd->add_option("derivation", psg_derivation, "derivation JSON")
      ->required();
  cg2psg_cmd->add_option("--labels", labels_path, "label config JSON");

  std::string rules_derivation, rules_labels;
  CLI::App* rules_cmd =
      app.add_subcommand("rules", "extract rewrite rules from a derivation");
  rules_cmd->add_option("derivation", rules_derivation, "derivation JSON")
      ->required();
  rules_cmd->add_option("--labels", rules_labels, "label config JSON");

  std::string unify_derivation, unify_graph;
  CLI::App* unify_cmd =
      app.add_subcommand("unify", "build the unified representation table");
  unify_cmd->add_option("derivation", unify_derivation, "derivation JSON")
      ->required();
  unify_cmd->add_option("--graph", unify_graph,
                        "dependency graph JSON (defaults to cg2dg output)");

  std::uint64_t formalisms = 3, sentences = 7;
  std::string formalism_labels = "PSG,DG,CG";
  bool enumerate = false;
  CLI::App* complexity_cmd =
      app.add_subcommand("complexity", "representation and mapping counts");
  complexity_cmd->add_option("--formalisms", formalisms)->capture_default_str();
  complexity_cmd->add_option("--sentences", sentences)->capture_default_str();
  complexity_cmd->add_option("--labels", formalism_labels)
      ->capture_default_str();
  complexity_cmd->add_flag("--enumerate", enumerate,
                           "list every assignment tuple");

  std::string left, right;
  CLI::App* sequnion_cmd =
      app.add_subcommand("sequnion", "order-preserving interleavings");
  sequnion_cmd->add_option("left", left, "comma-separated list")->required();
  sequnion_cmd->add_option("right", right, "comma-separated list")->required();

  // global flags may appear on either side of the subcommand name
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kInputFailure;
  }

  try {
    if (*derive_cmd)
      return detail::cmd_derive(common, goal, max_wrapped, tokens, out, err);
    if (*replay_cmd)
      return detail::cmd_replay(common, script_path, replay_tokens, out, err);
    if (*verify_cmd) return detail::cmd_verify(fixture_paths, out, err);
    if (*dg2cg_cmd) return detail::cmd_dg2cg(common, conllu_path, out, err);
    if (*cg2dg_cmd) return detail::cmd_cg2dg(common, derivation_path, out, err);
    if (*cg2psg_cmd)
      return detail::cmd_cg2psg(common, psg_derivation, labels_path, out, err);
    if (*rules_cmd)
      return detail::cmd_rules(common, rules_derivation, rules_labels, out,
                               err);
    if (*unify_cmd)
      return detail::cmd_unify(common, unify_derivation, unify_graph, out,
                               err);
    if (*complexity_cmd)
      return detail::cmd_complexity(common, formalisms, sentences,
                                    formalism_labels, enumerate, out, err);
    if (*sequnion_cmd)
      return detail::cmd_sequnion(common, left, right, out, err);
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kSemanticFailure;
  } catch (const std::exception& e) {
    // malformed JSON structure and similar input defects
    err << "error: " << e.what() << "\n";
    return kInputFailure;
  }
  err << "no subcommand\n";
  return kInputFailure;
}

}  // namespace unirep::cli

#endif

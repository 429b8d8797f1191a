// Acceptance suite: runs every criterion end to end and prints one
// pass/fail line per criterion.  All comparisons are exact; the subject
// matter is symbolic, so there are no tolerances to tune.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "unirep/analysis.hpp"
#include "unirep/correspondence.hpp"
#include "unirep/fixture.hpp"
#include "unirep/pstree.hpp"
#include "unirep/search.hpp"
#include "unirep/unified.hpp"

#ifndef UNIREP_DATA_DIR
#define UNIREP_DATA_DIR "data"
#endif

using namespace unirep;

namespace {

struct Runner {
  int failures = 0;
  int index = 0;

  void run(const std::string& name, const std::function<void()>& body) {
    ++index;
    std::string label = "criterion " + std::to_string(index);
    try {
      body();
      std::cout << label << ": PASS  " << name << std::endl;
    } catch (const std::exception& e) {
      ++failures;
      std::cout << label << ": FAIL  " << name << "\n      " << e.what()
                << std::endl;
    }
  }
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

template <typename T>
void require_eq(const T& got, const T& want, const std::string& what) {
  if (got == want) return;
  std::ostringstream os;
  os << what << ": expected " << want << ", got " << got;
  throw std::runtime_error(os.str());
}

LabelConfig turkish_labels() {
  LabelConfig cfg;
  cfg.preterminals = {{"Adv", "Adv"}, {"V1", "V"},    {"N1", "N"},
                      {"Conj", "Conj"}, {"V2", "V"},  {"N2", "N"},
                      {"V3", "V"},    {"Neg", "Neg"}, {"N4", "N"}};
  cfg.projections = {{"N1", "NP"}, {"N2", "NP"}, {"N4", "NP"},
                     {"Adv", "AdvP"}, {"Neg", "NegP"}};
  return cfg;
}

void criterion_1_turkish_replay() {
  CGDerivation d = fixtures::turkish_derivation();
  std::vector<std::string> expected = {"S/N", "S", "S/S", "S/N",
                                       "S",   "S/N", "S",  "S"};
  require(d.steps.size() == 8, "expected 8 steps");
  for (int i = 0; i < 8; ++i)
    require_eq(print_category(d.steps[i].result.category), expected[i],
               "step " + std::to_string(i + 1) + " result");
  require_eq(print_category(d.final.category), std::string("S"), "final");
  for (int i = 0; i < 8; ++i) {
    bool should_wrap = i == 2 || i == 5;
    require(d.steps[i].wrapped == should_wrap,
            "wrapped flag at step " + std::to_string(i + 1));
  }
}

void criterion_2_turkish_dependencies() {
  CGDerivation d = fixtures::turkish_derivation();
  DepGraph g = cg_to_dg(d);
  auto edge_list = g.edges();
  std::set<std::pair<int, int>> got(edge_list.begin(), edge_list.end());
  std::set<std::pair<int, int>> want = {{6, 7}, {6, 8}, {3, 6}, {1, 0},
                                        {1, 2}, {4, 1}, {4, 5}, {4, 3}};
  require(got == want, "edge set differs from the fixture graph");
  require_eq(g.root(), 4, "root must be git-");
  std::vector<int> delta = {2, 1, 2, 1, 0, 1, 2, 3, 3};
  for (int i = 0; i < 9; ++i)
    require_eq(g.delta(i, 0), delta[i],
               "delta of token " + std::to_string(i));
}

void criterion_3_equivalences() {
  EquivalenceReport r = verify_equivalences(fixtures::turkish_graph(),
                                            fixtures::turkish_derivation());
  require(r.pass, "verification must pass");
  require(r.equivalences.size() == 8, "expected 8 equivalences");
  require_eq(r.equivalences[1].rendered(),
             std::string("dön-(*-di) ≡ -me-/-di"), "step 2");
  require_eq(r.equivalences[4].rendered(),
             std::string("gel-iyor-(*-um) ≡ hemen/-um"), "step 5");
  require_eq(r.equivalences[5].rendered(),
             std::string("git-(gel-iyor-*) ≡ hemen\\git-"), "step 6");
  require_eq(r.equivalences[7].rendered(),
             std::string("git-(diye*) ≡ diye/git-"), "step 8");
  for (int i : {0, 3, 6, 7})
    require(r.equivalences[i].kind == Equivalence::Kind::direct,
            "step " + std::to_string(i + 1) + " must be direct");
  for (int i : {1, 2, 4, 5})
    require(r.equivalences[i].kind == Equivalence::Kind::mediated,
            "step " + std::to_string(i + 1) + " must be mediated");
}

void criterion_4_psg_rules() {
  CGDerivation d = fixtures::turkish_derivation();
  PSNode tree = cg_to_psg(d, turkish_labels());
  std::set<std::string> got;
  for (const PSGRule& r : extract_rules(tree)) got.insert(r.print());
  std::set<std::string> want = {
      "S → S S",   "S → VP NP",   "S → Conj S",
      "VP → S V",  "VP → V NegP", "VP → AdvP V",
      "NP → N",    "AdvP → Adv",  "NegP → Neg"};
  require(got == want, "rule set is not exactly the nine");
  require(!crossing_report(tree).empty(), "tree must have crossing branches");
  std::vector<int> leaves = leaf_order(tree);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    require(leaves[i] == static_cast<int>(i), "leaves out of sentence order");
}

void criterion_5_unified() {
  CGDerivation d = fixtures::turkish_derivation();
  DepGraph g = fixtures::turkish_graph();
  UnifiedTable t = build_unified(d, g);
  require_eq(print_delta(t.final_cell), std::string("δ(Conj)"),
             "final cell");
  std::vector<std::string> row0 = {
      "δ(Adv)/δ(V1)",
      "δ(V1)",
      "δ(N1)",
      "[δ(Conj)/δ(V2)]/δ(V3)",
      "δ(V1)\\[δ(V2)/δ(N2)]",
      "δ(N2)",
      "δ(V3)",
      "δ(V3)\\δ(Neg)",
      "δ(N4)"};
  for (int c = 0; c < 9; ++c)
    require_eq(print_delta(*t.rows[0][c]), row0[c],
               "row 0 cell " + std::to_string(c));
  require(read_dependencies(t) == g, "read-off must round-trip the graph");
}

void criterion_6_english() {
  CGDerivation d = fixtures::english_derivation();
  require_eq(print_category(d.final.category), std::string("S"), "final");
  require(d.wrapped_count() == 0, "no wrapping in the projective sentence");
  DepGraph g = cg_to_dg(d);
  require(projectivity(g).projective, "graph must be projective");

  // consistency with V(Det1, N1 * Det2, N2): the verb roots the sentence,
  // Det1 and N1 precede it among its descendants, Det2 and N2 follow.
  require_eq(g.root(), 2, "root must be the verb");
  Sentence s = fixtures::english_sentence();
  std::vector<std::string> left, right;
  for (int i = 0; i < s.size(); ++i) {
    if (i == g.root()) continue;
    (i < g.root() ? left : right).push_back(s[i].pos);
  }
  require(left == std::vector<std::string>{"Det1", "N1"},
          "left projection of the rule");
  require(right == std::vector<std::string>{"Det2", "N2"},
          "right projection of the rule");
  // per-head decomposition of the rule validates every node
  std::vector<std::string> pos;
  for (const Token& t : s.tokens) pos.push_back(t.pos);
  std::vector<DepRule> rules = {parse_dep_rule("V(N1 * N2)"),
                                parse_dep_rule("N1(Det1 *)"),
                                parse_dep_rule("N2(Det2 *)")};
  for (const NodeVerdict& v : validate_rules(g, pos, rules))
    require(v.valid, "node " + std::to_string(v.node) + " fails its rule");
}

void criterion_7_french() {
  CGDerivation d = fixtures::french_derivation();
  UnifiedTable t = build_unified(d, fixtures::french_graph());
  require(t.steps.size() == 4, "expected 4 steps");
  require_eq(print_delta(t.final_cell), std::string("δ(Aux)"),
             "final cell");
  std::vector<std::vector<std::string>> rows = {
      {"δ(N1)", "[δ(N1)\\δ(Aux)]/δ(V)",
       "δ(V)/δ(Det)", "δ(Det)/δ(N2)", "δ(N2)"},
      {"δ(N1)", "[δ(N1)\\δ(Aux)]/δ(V)",
       "δ(V)/δ(Det)", "δ(Det)", ""},
      {"δ(N1)", "[δ(N1)\\δ(Aux)]/δ(V)", "δ(V)", "",
       ""},
      {"δ(N1)", "δ(N1)\\δ(Aux)", "", "", ""},
      {"", "δ(Aux)", "", "", ""}};
  require(t.rows.size() == rows.size(), "row count");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < 5; ++c) {
      std::string got = t.rows[r][c] ? print_delta(*t.rows[r][c]) : "";
      require_eq(got, rows[r][c],
                 "row " + std::to_string(r) + " col " + std::to_string(c));
    }
  }
}

void criterion_8_raising_control() {
  Fixture raising =
      load_fixture(std::string(UNIREP_DATA_DIR) + "/fixtures/raising_seems.json");
  Fixture control = load_fixture(std::string(UNIREP_DATA_DIR) +
                                 "/fixtures/control_decided.json");
  UnifiedTable tr = abbreviated(raising.columns, raising.abbrev_steps);
  UnifiedTable tc = abbreviated(control.columns, control.abbrev_steps);
  require(isomorphic_up_to_pos(tr, tc),
          "raising and control tables must be isomorphic up to POS");
  require_eq(print_delta(tr.final_cell), std::string("δ(V)"),
             "raising final");
  require_eq(print_delta(tc.final_cell), std::string("δ(V1)"),
             "control final");
}

void criterion_9_complexity() {
  require_eq(representation_count(3, 2).to_string(), std::string("9"),
             "3^2");
  require_eq(representation_count(3, 7).to_string(), std::string("2187"),
             "3^7");
  auto [m7, t7] = mapping_counts(3, 7);
  require_eq(m7.to_string(), std::string("6"), "M for N=3");
  require_eq(t7.to_string(), std::string("42"), "7 sentences x 6");
  auto [m3, t3] = mapping_counts(3, 3);
  require_eq(m3.to_string(), std::string("6"), "M for N=3");
  require_eq(t3.to_string(), std::string("18"), "3 sentences x 6");

  auto nine = enumerate_assignments({"PSG", "DG", "CG"}, 2);
  std::set<std::vector<std::string>> got(nine.begin(), nine.end());
  std::set<std::vector<std::string>> want = {
      {"S1^PSG", "S2^PSG"}, {"S1^PSG", "S2^DG"}, {"S1^PSG", "S2^CG"},
      {"S1^DG", "S2^DG"},   {"S1^DG", "S2^PSG"}, {"S1^DG", "S2^CG"},
      {"S1^CG", "S2^PSG"},  {"S1^CG", "S2^CG"},  {"S1^CG", "S2^DG"}};
  require(got == want, "the nine tuples differ");

  ComplexityReport unified = complexity_report(1, 7);
  require(unified.footnote_variant.has_value(), "footnote variant missing");
  require_eq(unified.footnote_variant->to_string(), std::string("7"),
             "footnote variant for f=1, n=7");
}

void criterion_10_sequence_union() {
  auto got = sequence_union({"p", "q"}, {"r", "s"});
  std::set<std::vector<std::string>> want = {
      {"p", "q", "r", "s"}, {"p", "r", "s", "q"}, {"p", "r", "q", "s"},
      {"r", "s", "p", "q"}, {"r", "p", "s", "q"}, {"r", "p", "q", "s"}};
  require(got == want, "the six valid sequences differ");
  require(!got.count({"q", "p", "r", "s"}), "q,p,r,s must be excluded");
  require(!got.count({"p", "q", "s", "r"}), "p,q,s,r must be excluded");

  // size law against a brute-force permutation filter, lengths <= 7
  auto oracle = [](std::vector<std::string> l1, std::vector<std::string> l2) {
    std::vector<std::string> all = l1;
    all.insert(all.end(), l2.begin(), l2.end());
    std::sort(all.begin(), all.end());
    auto preserves = [](const std::vector<std::string>& seq,
                        const std::vector<std::string>& sub) {
      std::size_t i = 0;
      for (const std::string& x : seq)
        if (i < sub.size() && x == sub[i]) ++i;
      return i == sub.size();
    };
    std::set<std::vector<std::string>> out;
    do {
      if (preserves(all, l1) && preserves(all, l2)) out.insert(all);
    } while (std::next_permutation(all.begin(), all.end()));
    return out;
  };
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      cases = {{{"a"}, {"b"}},
               {{"a", "b"}, {"c"}},
               {{"a", "b"}, {"c", "d", "e"}},
               {{"a", "b", "c"}, {"d", "e", "f", "g"}},
               {{}, {"x", "y"}}};
  for (const auto& [l1, l2] : cases) {
    auto mine = sequence_union(l1, l2);
    require(mine == oracle(l1, l2), "disagrees with permutation filter");
    require(mine.size() == binomial(l1.size() + l2.size(), l1.size()),
            "size law violated");
  }
}

void criterion_11_property_suites() {
  // category parse/print round-trip
  {
    std::mt19937 rng(101);
    std::function<Category(int)> random_cat = [&](int depth) {
      static const char* atoms[] = {"S", "N", "Det", "Aux", "Infinitive"};
      std::uniform_int_distribution<int> atom_pick(0, 4);
      std::uniform_int_distribution<int> kind(0, 2);
      if (depth == 0 || kind(rng) == 0)
        return Category::atom(atoms[atom_pick(rng)]);
      Category a = random_cat(depth - 1);
      Category b = random_cat(depth - 1);
      return kind(rng) == 1 ? Category::rightward(a, b)
                            : Category::leftward(a, b);
    };
    for (int i = 0; i < 1000; ++i) {
      Category c = random_cat(5);
      require(parse_category(print_category(c)) == c,
              "round-trip failed for " + print_category(c));
    }
  }
  // delta monotonicity on random trees
  {
    std::mt19937 rng(202);
    for (int i = 0; i < 1000; ++i) {
      std::uniform_int_distribution<int> size(1, 15);
      int n = size(rng);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::pair<int, int>> edges;
      for (int k = 1; k < n; ++k) {
        std::uniform_int_distribution<int> pick(0, k - 1);
        edges.emplace_back(order[pick(rng)], order[k]);
      }
      DepGraph g = DepGraph::build(n, edges);
      for (auto [h, d] : g.edges())
        require(g.delta(d) == g.delta(h) + 1 && g.delta(d) > g.delta(h),
                "delta not monotone");
    }
  }
  // span conservation, crossing <-> wrapping, rule regeneration
  {
    std::mt19937 rng(303);
    for (int i = 0; i < 1000; ++i) {
      generators::Generated gen = generators::random_derivation(rng);
      CGDerivation d = replay(gen.sentence, gen.row, gen.script);
      std::vector<TokenSet> live;
      for (int k = 0; k < gen.sentence.size(); ++k)
        live.push_back(tokenset::single(k));
      TokenSet all = tokenset::full(gen.sentence.size());
      for (const CGStep& s : d.steps) {
        TokenSet covered = 0;
        for (TokenSet t : live) covered |= t;
        require(covered == all, "live spans do not partition the sentence");
        std::erase(live, s.functor.tokens);
        std::erase(live, s.argument.tokens);
        live.push_back(s.result.tokens);
      }
      PSNode tree = cg_to_psg(d, generators::permissive_labels());
      require(!crossing_report(tree).empty() == (d.wrapped_count() >= 1),
              "crossing does not match wrapping");
      std::set<PSGRule> rules = extract_rules(tree);
      struct Walker {
        const std::set<PSGRule>& rules;
        bool ok = true;
        void walk(const PSNode& n) {
          if (!n.is_leaf() && !n.is_preterminal()) {
            PSGRule r;
            r.lhs = n.label;
            for (const PSNode& c : n.children) r.rhs.push_back(c.label);
            if (!rules.count(r)) ok = false;
          }
          for (const PSNode& c : n.children) walk(c);
        }
      } walker{rules};
      walker.walk(tree);
      require(walker.ok, "extracted rules do not regenerate the tree");
    }
  }
}

}  // namespace

int main() {
  Runner runner;
  runner.run("Turkish replay: step categories, final S, wraps at 3 and 6",
             criterion_1_turkish_replay);
  runner.run("Turkish dependencies: the eight edges, root, depth values",
             criterion_2_turkish_dependencies);
  runner.run("the eight equivalences with verbatim forms and kinds",
             criterion_3_equivalences);
  runner.run("the nine rewrite rules, crossing branches, leaf order",
             criterion_4_psg_rules);
  runner.run("unified table: first row, final cell, read-off round-trip",
             criterion_5_unified);
  runner.run("English: zero wraps, projective, verb-rooted rule projection",
             criterion_6_english);
  runner.run("French: four steps ending in the auxiliary's term",
             criterion_7_french);
  runner.run("raising and control tables isomorphic up to POS relabeling",
             criterion_8_raising_control);
  runner.run("representation and mapping counts, the nine assignments",
             criterion_9_complexity);
  runner.run("sequence union: the six valid interleavings, size law",
             criterion_10_sequence_union);
  runner.run("randomized property suites, 1000 cases each",
             criterion_11_property_suites);
  if (runner.failures) {
    std::cout << runner.failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

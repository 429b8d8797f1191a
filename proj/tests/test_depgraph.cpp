#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "unirep/depgraph.hpp"

using namespace unirep;

TEST_CASE("Turkish dependency graph builds with root git-") {
  DepGraph g = fixtures::turkish_graph();
  CHECK(g.root() == 4);
  CHECK(g.has_edge(6, 7));  // -me- is dependent on dön-
  CHECK(g.has_edge(6, 8));
  CHECK(g.has_edge(3, 6));
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(4, 1));
  CHECK(g.has_edge(4, 5));
  CHECK(g.has_edge(4, 3));
}

TEST_CASE("graph validation errors") {
  CHECK_NOTHROW(DepGraph::build(1, {}));
  CHECK(DepGraph::build(1, {}).root() == 0);
  CHECK_THROWS_AS(DepGraph::build(2, {{0, 1}, {1, 0}}), graph_error);
  CHECK_THROWS_AS(DepGraph::build(3, {{0, 1}, {0, 1}}), graph_error);
  CHECK_THROWS_AS(DepGraph::build(3, {{0, 1}}), graph_error);     // two roots
  CHECK_THROWS_AS(DepGraph::build(3, {{0, 0}}), graph_error);     // self loop
  CHECK_THROWS_AS(DepGraph::build(4, {{0, 1}, {2, 3}, {3, 2}}), graph_error);
}

TEST_CASE("delta is depth with a configurable start") {
  DepGraph g = fixtures::turkish_graph();
  // independently derived by breadth-first depth over the edge list
  std::vector<int> expected = {2, 1, 2, 1, 0, 1, 2, 3, 3};
  for (int i = 0; i < 9; ++i) {
    CHECK(g.delta(i, 0) == expected[i]);
    CHECK(g.delta(i, 1) == expected[i] + 1);
  }
  CHECK(g.delta(g.root(), 0) == 0);
  CHECK(g.delta(g.root(), 1) == 1);
  CHECK_THROWS_AS(g.delta(9, 0), graph_error);
}

TEST_CASE("delta strictly increases along every edge") {
  DepGraph g = fixtures::turkish_graph();
  for (auto [h, d] : g.edges()) {
    CHECK(g.delta(d) == g.delta(h) + 1);
    CHECK(g.delta(d) > g.delta(h));
  }
}

TEST_CASE("property: delta monotonicity on random trees") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 1100; ++iter) {
    std::uniform_int_distribution<int> size(1, 15);
    int n = size(rng);
    // random tree: each non-root node picks an earlier node as head under
    // a random permutation of positions
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
      std::uniform_int_distribution<int> pick(0, i - 1);
      edges.emplace_back(order[pick(rng)], order[i]);
    }
    DepGraph g = DepGraph::build(n, edges);
    for (auto [h, d] : g.edges()) CHECK(g.delta(d) == g.delta(h) + 1);
    for (int i = 0; i < n; ++i) CHECK(g.delta(i, 1) == g.delta(i, 0) + 1);
  }
}

TEST_CASE("Turkish graph is non-projective") {
  ProjectivityReport r = projectivity(fixtures::turkish_graph());
  CHECK_FALSE(r.projective);
  // the edge git- -> gel-iyor- crosses the diye -> dön- region
  bool found = false;
  for (const auto& [x, y] : r.crossings) {
    auto is = [](const CrossingEdge& e, int h, int d) {
      return e.head == h && e.dependent == d;
    };
    if ((is(x, 4, 1) && is(y, 3, 6)) || (is(x, 3, 6) && is(y, 4, 1)))
      found = true;
  }
  CHECK(found);
}

TEST_CASE("flat English analysis with every word on the verb is projective") {
  // V(Det1, N1 * Det2, N2): all four words depend on the verb directly
  DepGraph flat = DepGraph::build(5, {{2, 0}, {2, 1}, {2, 3}, {2, 4}});
  CHECK(projectivity(flat).projective);
  // the nested graph produced by the conversion is projective too
  CHECK(projectivity(fixtures::english_graph()).projective);
}

TEST_CASE("two-node graph is projective; root projection is detected") {
  CHECK(projectivity(DepGraph::build(2, {{0, 1}})).projective);
  // 1 -> 2 -> 0: token 1 (the root) sits inside the span of edge (2,0)
  DepGraph g = DepGraph::build(3, {{1, 2}, {2, 0}});
  ProjectivityReport r = projectivity(g);
  CHECK_FALSE(r.projective);
  bool involves_root_projection = false;
  for (const auto& [x, y] : r.crossings)
    if (x.root_projection() || y.root_projection())
      involves_root_projection = true;
  CHECK(involves_root_projection);
}

TEST_CASE("projectivity depends only on indices and edges") {
  // relabeling forms/POS cannot change it: it never sees them
  DepGraph g = fixtures::turkish_graph();
  CHECK_FALSE(projectivity(g).projective);
}

TEST_CASE("dependency rule parsing and printing") {
  DepRule r = parse_dep_rule("V(Det1, N1 * Det2, N2)");
  CHECK(r.head_pos == "V");
  CHECK(r.left_deps == std::vector<std::string>{"Det1", "N1"});
  CHECK(r.right_deps == std::vector<std::string>{"Det2", "N2"});
  CHECK(r.print() == "V(Det1, N1 * Det2, N2)");

  DepRule leaf = parse_dep_rule("I(*)");
  CHECK(leaf.head_pos == "I");
  CHECK(leaf.is_leaf_rule());
  CHECK(leaf.print() == "I(*)");

  CHECK_THROWS_AS(parse_dep_rule("V(Det1, N1)"), parse_error);
  CHECK_THROWS_AS(parse_dep_rule("(*)"), parse_error);
}

TEST_CASE("validate_rules on the flat English analysis") {
  DepGraph flat = DepGraph::build(5, {{2, 0}, {2, 1}, {2, 3}, {2, 4}});
  std::vector<std::string> pos = {"Det1", "N1", "V", "Det2", "N2"};
  std::vector<DepRule> rules = {parse_dep_rule("V(Det1, N1 * Det2, N2)")};
  auto verdicts = validate_rules(flat, pos, rules);
  for (const NodeVerdict& v : verdicts) CHECK(v.valid);
}

TEST_CASE("validate_rules on the nested English analysis, decomposed") {
  DepGraph g = fixtures::english_graph();
  std::vector<std::string> pos = {"Det1", "N1", "V", "Det2", "N2"};
  std::vector<DepRule> rules = {parse_dep_rule("V(N1 * N2)"),
                                parse_dep_rule("N1(Det1 *)"),
                                parse_dep_rule("N2(Det2 *)")};
  auto verdicts = validate_rules(g, pos, rules);
  for (const NodeVerdict& v : verdicts) {
    CAPTURE(v.node);
    CHECK(v.valid);
  }
  // leaves match I(*) even with no explicit leaf rule
  CHECK(verdicts[0].matched_rule == "Det1(*)");
}

TEST_CASE("validate_rules flags unlisted dependents") {
  DepGraph g = DepGraph::build(3, {{1, 0}, {1, 2}});
  std::vector<std::string> pos = {"A", "H", "B"};
  auto verdicts =
      validate_rules(g, pos, {parse_dep_rule("H(A *)")});  // misses right B
  CHECK_FALSE(verdicts[1].valid);
  auto ok = validate_rules(g, pos, {parse_dep_rule("H(A * B)")});
  CHECK(ok[1].valid);
  // unknown head POS is flagged distinctly
  auto none = validate_rules(g, pos, {});
  CHECK_FALSE(none[1].valid);
  CHECK(none[1].note.find("no rule for POS") != std::string::npos);
}

TEST_CASE("conllu subset import") {
  std::string text =
      "# sent_id = demo\n"
      "1\themen\t_\tAdv\t_\t_\t2\t_\t_\t_\n"
      "2-3\tgeliyorum\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "2\tgel-iyor-\t_\tV1\t_\t_\t5\t_\t_\t_\n"
      "3\t-um\t_\tN1\t_\t_\t2\t_\t_\t_\n"
      "4\tdiye\t_\tConj\t_\t_\t5\t_\t_\t_\n"
      "5\tgit-\t_\tV2\t_\t_\t0\t_\t_\t_\n"
      "5.1\tnull\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "6\t-ti\t_\tN2\t_\t_\t5\t_\t_\t_\n"
      "7\tdön-\t_\tV3\t_\t_\t4\t_\t_\t_\n"
      "8\t-me-\t_\tNeg\t_\t_\t7\t_\t_\t_\n"
      "9\t-di\t_\tN4\t_\t_\t7\t_\t_\t_\n";
  ConlluResult r = read_conllu_text(text);
  CHECK(r.sentence.size() == 9);
  CHECK(r.graph == fixtures::turkish_graph());
  CHECK(r.graph.root() == 4);
  CHECK(r.warnings.size() == 2);  // one multi-word token, one empty node
  CHECK(r.sentence[0].pos == "Adv");

  CHECK_THROWS_AS(read_conllu_text("1\tx\t_\tN\n"), io_error);
  CHECK_THROWS_AS(read_conllu_text(""), io_error);
}

#ifndef UNIREP_TESTS_FIXTURES_HPP
#define UNIREP_TESTS_FIXTURES_HPP

#include <utility>
#include <vector>

#include "unirep/category.hpp"
#include "unirep/depgraph.hpp"
#include "unirep/derivation.hpp"
#include "unirep/sentence.hpp"

namespace fixtures {

// The discontinuous Turkish subordinate clause, morpheme-level tokens.
//   0 hemen     Adv   (S/N)/(S/N)
//   1 gel-iyor- V1    S/N
//   2 -um       N1    N
//   3 diye      Conj  (S/S)/S
//   4 git-      V2    S\(S/N)
//   5 -ti       N2    N
//   6 dön-      V3    S/N
//   7 -me-      Neg   (S/N)\(S/N)
//   8 -di       N4    N
inline unirep::Sentence turkish_sentence() {
  return unirep::Sentence::of({{"hemen", "Adv"},
                               {"gel-iyor-", "V1"},
                               {"-um", "N1"},
                               {"diye", "Conj"},
                               {"git-", "V2"},
                               {"-ti", "N2"},
                               {"dön-", "V3"},
                               {"-me-", "Neg"},
                               {"-di", "N4"}});
}

inline std::vector<unirep::Category> turkish_lexical_row() {
  using unirep::parse_category;
  return {parse_category("(S/N)/(S/N)"), parse_category("S/N"),
          parse_category("N"),           parse_category("(S/S)/S"),
          parse_category("S\\(S/N)"),    parse_category("N"),
          parse_category("S/N"),         parse_category("(S/N)\\(S/N)"),
          parse_category("N")};
}

inline std::vector<unirep::ScriptStep> turkish_script() {
  return {{7, 6}, {6, 8}, {3, 6}, {0, 1}, {1, 2}, {4, 1}, {4, 5}, {3, 4}};
}

inline unirep::CGDerivation turkish_derivation() {
  return unirep::replay(turkish_sentence(), turkish_lexical_row(),
                        turkish_script());
}

// head -> dependent
inline std::vector<std::pair<int, int>> turkish_edges() {
  return {{6, 7}, {6, 8}, {3, 6}, {1, 0}, {1, 2}, {4, 1}, {4, 5}, {4, 3}};
}

inline unirep::DepGraph turkish_graph() {
  return unirep::DepGraph::build(9, turkish_edges());
}

// The girl likes the flower.
//   0 the    Det1  N/N
//   1 girl   N1    N
//   2 likes  V     (N\S)/N
//   3 the    Det2  N/N
//   4 flower N2    N
inline unirep::Sentence english_sentence() {
  return unirep::Sentence::of({{"the", "Det1"},
                               {"girl", "N1"},
                               {"likes", "V"},
                               {"the", "Det2"},
                               {"flower", "N2"}});
}

inline std::vector<unirep::Category> english_lexical_row() {
  using unirep::parse_category;
  return {parse_category("N/N"), parse_category("N"),
          parse_category("(N\\S)/N"), parse_category("N/N"),
          parse_category("N")};
}

inline std::vector<unirep::ScriptStep> english_script() {
  return {{0, 1}, {3, 4}, {2, 4}, {2, 1}};
}

inline unirep::CGDerivation english_derivation() {
  return unirep::replay(english_sentence(), english_lexical_row(),
                        english_script());
}

inline std::vector<std::pair<int, int>> english_edges() {
  return {{1, 0}, {4, 3}, {2, 4}, {2, 1}};
}

inline unirep::DepGraph english_graph() {
  return unirep::DepGraph::build(5, english_edges());
}

// Marie a lu son livre.
//   0 Marie N1   N
//   1 a     Aux  (N\Aux)/V
//   2 lu    V    V/Det
//   3 son   Det  Det/N
//   4 livre N2   N
inline unirep::Sentence french_sentence() {
  return unirep::Sentence::of({{"Marie", "N1"},
                               {"a", "Aux"},
                               {"lu", "V"},
                               {"son", "Det"},
                               {"livre", "N2"}});
}

inline std::vector<unirep::Category> french_lexical_row() {
  using unirep::parse_category;
  return {parse_category("N"), parse_category("(N\\Aux)/V"),
          parse_category("V/Det"), parse_category("Det/N"),
          parse_category("N")};
}

inline std::vector<unirep::ScriptStep> french_script() {
  return {{3, 4}, {2, 3}, {1, 2}, {1, 0}};
}

inline unirep::CGDerivation french_derivation() {
  return unirep::replay(french_sentence(), french_lexical_row(),
                        french_script());
}

inline unirep::DepGraph french_graph() {
  return unirep::DepGraph::build(
      5, {{3, 4}, {2, 3}, {1, 2}, {1, 0}});
}

}  // namespace fixtures

#endif

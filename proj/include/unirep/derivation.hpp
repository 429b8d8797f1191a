#ifndef UNIREP_DERIVATION_HPP
#define UNIREP_DERIVATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unirep/category.hpp"
#include "unirep/error.hpp"
#include "unirep/sentence.hpp"

namespace unirep {

/// Token-index sets as bitmasks.  Derivations are desk-scale; 64 positions
/// is far beyond any fixture.
using TokenSet = std::uint64_t;

namespace tokenset {

inline TokenSet single(int i) { return TokenSet{1} << i; }
inline bool contains(TokenSet s, int i) { return (s >> i) & 1; }
inline int count(TokenSet s) { return __builtin_popcountll(s); }
inline int min_index(TokenSet s) { return __builtin_ctzll(s); }
inline int max_index(TokenSet s) { return 63 - __builtin_clzll(s); }

inline std::vector<int> to_indices(TokenSet s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

inline TokenSet full(int n) {
  if (n <= 0 || n > 64) throw error("token count must be in 1..64");
  return n == 64 ? ~TokenSet{0} : (TokenSet{1} << n) - 1;
}

}  // namespace tokenset

/// Which lexical item introduced each node of a derived category.
/// Shape-isomorphic to the category it annotates; kids follow the printing
/// order of the constructor (rightward: result, argument; leftward:
/// argument, result).
struct Prov {
  int owner = -1;
  std::vector<Prov> kids;

  static Prov lexical(const Category& c, int owner) {
    Prov p;
    p.owner = owner;
    if (!c.is_atom()) {
      if (c.is_rightward()) {
        p.kids = {lexical(c.result(), owner), lexical(c.argument(), owner)};
      } else {
        p.kids = {lexical(c.argument(), owner), lexical(c.result(), owner)};
      }
    }
    return p;
  }

  std::string serialize() const {
    std::string out = std::to_string(owner);
    if (!kids.empty()) {
      out += "(" + kids[0].serialize() + "," + kids[1].serialize() + ")";
    }
    return out;
  }
};

/// The result-side child of a provenance node.
inline const Prov& result_prov(const Category& c, const Prov& p) {
  if (c.is_atom()) throw error("result_prov on atomic category");
  return c.is_rightward() ? p.kids[0] : p.kids[1];
}

/// Owner of the atom at the end of the result chain.
inline int principal_atom_owner(const Category& c, const Prov& p) {
  if (c.is_atom()) return p.owner;
  return principal_atom_owner(c.result(), result_prov(c, p));
}

/// A live span during a derivation: its category, yield (possibly
/// non-contiguous), lexical head, and slash/atom provenance.
struct SpanState {
  Category category;
  TokenSet tokens = 0;
  int head = -1;
  Prov prov;

  static SpanState lexical(int index, const Category& c) {
    SpanState s;
    s.category = c;
    s.tokens = tokenset::single(index);
    s.head = index;
    s.prov = Prov::lexical(c, index);
    return s;
  }
};

enum class Direction { left, right };

inline std::string to_string(Direction d) {
  return d == Direction::left ? "left" : "right";
}

struct CGStep {
  int step_no = 0;
  SpanState functor;
  SpanState argument;
  Direction direction = Direction::right;  // side of the argument
  bool wrapped = false;
  int intervener_count = 0;
  bool modifier = false;  // cancelling category was X/X or X\X
  SpanState result;
  // Lexical owners of the cancelled slash and of the argument's
  // principal atom.
  std::pair<int, int> cg_pair{-1, -1};
};

struct CGDerivation {
  Sentence sentence;
  std::vector<Category> lexical_row;
  std::vector<CGStep> steps;
  SpanState final;

  int wrapped_count() const {
    int n = 0;
    for (const CGStep& s : steps) n += s.wrapped;
    return n;
  }
};

namespace detail {

/// Side of the argument relative to the functor.  Spans may interleave
/// (wrapping), so the comparison is between lexical heads.
inline Direction side_of(const SpanState& functor, const SpanState& argument) {
  return argument.head > functor.head ? Direction::right : Direction::left;
}

/// Positions strictly between the left span's last token and the right
/// span's first.  Interleaved spans have no gap.
inline std::pair<int, int> gap_interval(const SpanState& functor,
                                        const SpanState& argument,
                                        Direction dir) {
  const SpanState& left = dir == Direction::right ? functor : argument;
  const SpanState& right = dir == Direction::right ? argument : functor;
  return {tokenset::max_index(left.tokens), tokenset::min_index(right.tokens)};
}

inline void check_types(const SpanState& functor, const SpanState& argument,
                        Direction dir, int step_no) {
  auto at = [&]() {
    return step_no > 0 ? " at step " + std::to_string(step_no) : std::string();
  };
  if (functor.category.is_atom())
    throw type_error("functor category " + print_category(functor.category) +
                     " has no argument slot" + at());
  Direction expected =
      functor.category.is_rightward() ? Direction::right : Direction::left;
  if (dir != expected)
    throw type_error("argument on the wrong side of " +
                     print_category(functor.category) + ": expected " +
                     to_string(expected) + ", found " + to_string(dir) + at());
  if (!(argument.category == functor.category.argument()))
    throw type_error("category mismatch" + at() + ": functor " +
                     print_category(functor.category) + " expects " +
                     print_category(functor.category.argument()) +
                     ", found " + print_category(argument.category));
}

inline SpanState combine(const SpanState& functor, const SpanState& argument,
                         bool modifier) {
  if (functor.tokens & argument.tokens)
    throw error("overlapping spans in combine");
  SpanState out;
  out.category = functor.category.result();
  out.tokens = functor.tokens | argument.tokens;
  out.head = modifier ? argument.head : functor.head;
  out.prov = result_prov(functor.category, functor.prov);
  return out;
}

}  // namespace detail

/// X/Y applied to Y on its right.  The composite head follows the modifier
/// rule: the argument's head for X/X-shaped functors, the functor's head
/// otherwise.
inline SpanState forward_apply(const SpanState& functor,
                               const SpanState& argument) {
  detail::check_types(functor, argument, Direction::right, 0);
  if (detail::side_of(functor, argument) != Direction::right)
    throw type_error("argument is not to the right of the functor");
  return detail::combine(functor, argument,
                         functor.category.modifier_shaped());
}

/// Y\X applied to Y on its left.
inline SpanState backward_apply(const SpanState& argument,
                                const SpanState& functor) {
  detail::check_types(functor, argument, Direction::left, 0);
  if (detail::side_of(functor, argument) != Direction::left)
    throw type_error("argument is not to the left of the functor");
  return detail::combine(functor, argument,
                         functor.category.modifier_shaped());
}

/// Builds the step for any functor/argument pair among the live spans,
/// adjacent or wrapped.  Category arithmetic is identical in both cases;
/// a wrapped step leaves the intervening spans in place.
inline CGStep apply_pair(const SpanState& functor, const SpanState& argument,
                         const std::vector<SpanState>& live, int step_no = 0) {
  Direction dir = detail::side_of(functor, argument);
  detail::check_types(functor, argument, dir, step_no);
  auto [lo, hi] = detail::gap_interval(functor, argument, dir);
  int interveners = 0;
  if (lo < hi) {
    for (const SpanState& s : live) {
      if (s.tokens == functor.tokens || s.tokens == argument.tokens) continue;
      for (int p = lo + 1; p < hi; ++p) {
        if (tokenset::contains(s.tokens, p)) {
          ++interveners;
          break;
        }
      }
    }
  }
  CGStep step;
  step.step_no = step_no;
  step.functor = functor;
  step.argument = argument;
  step.direction = dir;
  step.intervener_count = interveners;
  step.wrapped = interveners >= 1;
  step.modifier = functor.category.modifier_shaped();
  step.result = detail::combine(functor, argument, step.modifier);
  step.cg_pair = {functor.prov.owner,
                  principal_atom_owner(argument.category, argument.prov)};
  return step;
}

/// Non-adjacent application over k >= 1 intervening live spans.  Returns
/// nullopt for adjacent pairs: that is a routing signal to use the plain
/// application, not an error.
inline std::optional<CGStep> wrap_apply(const SpanState& functor,
                                        const SpanState& argument,
                                        const std::vector<SpanState>& live) {
  CGStep step = apply_pair(functor, argument, live);
  if (!step.wrapped) return std::nullopt;
  return step;
}

/// One replay instruction: live spans addressed by their head token.
struct ScriptStep {
  int functor = -1;
  int argument = -1;
};

/// Executes a fixture script step by step, auto-detecting adjacency versus
/// wrapping.  Fails loudly on ill-typed steps and dangling references.
inline CGDerivation replay(const Sentence& sentence,
                           const std::vector<Category>& lexical_row,
                           const std::vector<ScriptStep>& script) {
  if (static_cast<int>(lexical_row.size()) != sentence.size())
    throw script_error("lexical row size does not match sentence");
  if (sentence.size() > 64) throw script_error("sentence longer than 64 tokens");

  std::vector<SpanState> live;
  for (int i = 0; i < sentence.size(); ++i)
    live.push_back(SpanState::lexical(i, lexical_row[i]));

  CGDerivation d;
  d.sentence = sentence;
  d.lexical_row = lexical_row;

  auto find = [&](int head, int step_no) -> std::size_t {
    for (std::size_t i = 0; i < live.size(); ++i)
      if (live[i].head == head) return i;
    throw script_error("step " + std::to_string(step_no) +
                       ": no live span headed by token " +
                       std::to_string(head));
  };

  int step_no = 0;
  for (const ScriptStep& s : script) {
    ++step_no;
    std::size_t fi = find(s.functor, step_no);
    std::size_t ai = find(s.argument, step_no);
    if (fi == ai)
      throw script_error("step " + std::to_string(step_no) +
                         ": functor and argument are the same span");
    CGStep step = apply_pair(live[fi], live[ai], live, step_no);
    d.steps.push_back(step);
    SpanState merged = step.result;
    if (fi < ai) std::swap(fi, ai);
    live.erase(live.begin() + fi);
    live.erase(live.begin() + ai);
    live.push_back(merged);
  }
  if (live.size() != 1)
    throw script_error("script leaves " + std::to_string(live.size()) +
                       " spans unconsumed");
  d.final = live.front();
  if (d.final.tokens != tokenset::full(sentence.size()))
    throw script_error("final span does not cover the sentence");
  return d;
}

}  // namespace unirep

#endif

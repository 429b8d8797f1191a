#ifndef UNIREP_UNIFIED_HPP
#define UNIREP_UNIFIED_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unirep/correspondence.hpp"
#include "unirep/delta_expr.hpp"
#include "unirep/depgraph.hpp"
#include "unirep/derivation.hpp"
#include "unirep/error.hpp"

namespace unirep {

struct UnifiedStep {
  int step_no = 0;
  int functor_col = -1;   // column (head token) of the functor cell
  int argument_col = -1;  // column of the argument cell
  int result_col = -1;    // column of the merged cell
  Direction direction = Direction::right;
  bool modifier = false;
  bool wrapped = false;
};

/// The per-step table of delta-annotated category expressions.  Row 0 holds
/// the lexical expressions; row i the surviving cells after step i; the last
/// row is the single final cell.  A cell sits in the column of its span's
/// head token.
struct UnifiedTable {
  Sentence columns{std::vector<Token>{Token{0, "", ""}}};
  std::vector<bool> placeholder;  // elided "..." columns (abbreviated tables)
  std::vector<std::vector<std::optional<DeltaExpr>>> rows;
  std::vector<UnifiedStep> steps;
  DeltaExpr final_cell;
  std::optional<std::vector<int>> delta_values;  // start = 0
  int delta_start = 0;

  int column_count() const { return columns.size(); }
  const std::vector<std::optional<DeltaExpr>>& row(int i) const {
    return rows.at(i);
  }
};

namespace detail {

struct SlotFill {
  int arg_head = -1;
  std::string arg_pos;
};

struct Expansion {
  std::vector<SlotFill> slots;
};

/// Follows a span's lineage forward: each future step where the lineage is
/// the functor fills one slot with the argument span's head; a
/// modifier-shaped cancellation hands headship to the argument, which ends
/// the lineage's own expansion (so does being consumed as an argument).
inline Expansion span_future(const CGDerivation& d, TokenSet span_tokens,
                             std::size_t from_step) {
  Expansion exp;
  TokenSet cur = span_tokens;
  for (std::size_t i = from_step; i < d.steps.size(); ++i) {
    const CGStep& s = d.steps[i];
    if (s.functor.tokens == cur) {
      exp.slots.push_back(
          {s.argument.head, d.sentence[s.argument.head].pos});
      if (s.modifier) return exp;
      cur = s.result.tokens;
    } else if (s.argument.tokens == cur) {
      return exp;
    }
  }
  return exp;
}

inline DeltaExpr expand_category(const Category& c,
                                 const std::vector<SlotFill>& slots,
                                 std::size_t slot_index,
                                 const std::string& own_pos, int own_token,
                                 const DepGraph* g) {
  auto term = [&](const std::string& pos, int token) {
    std::optional<int> value;
    if (g && token >= 0) value = g->delta(token, 0);
    return DeltaExpr::term(pos, token, value);
  };
  if (slot_index >= slots.size()) return term(own_pos, own_token);
  if (c.is_atom())
    throw error("delta expansion ran out of argument slots for " + own_pos);
  DeltaExpr arg = term(slots[slot_index].arg_pos, slots[slot_index].arg_head);
  DeltaExpr rest = expand_category(c.result(), slots, slot_index + 1, own_pos,
                                   own_token, g);
  if (c.is_rightward()) return DeltaExpr::rightward(rest, arg);
  return DeltaExpr::leftward(arg, rest);
}

inline DeltaExpr span_cell(const CGDerivation& d, const SpanState& span,
                           std::size_t from_step, const DepGraph* g) {
  Expansion exp = span_future(d, span.tokens, from_step);
  const std::string& own_pos = d.sentence[span.head].pos;
  return expand_category(span.category, exp.slots, 0, own_pos, span.head, g);
}

}  // namespace detail

/// The lexical delta expression of token `w`: its own POS anchors the
/// surviving result, and every argument slot it actually cancels (while it
/// remains the span head) carries the filling span's head.
inline DeltaExpr to_delta_expr(int w, const CGDerivation& d,
                               const DepGraph* g = nullptr) {
  if (w < 0 || w >= d.sentence.size())
    throw error("token index out of range in to_delta_expr");
  SpanState lexical = SpanState::lexical(w, d.lexical_row.at(w));
  return detail::span_cell(d, lexical, 0, g);
}

/// Builds the unified table for a verified derivation/graph pair.  Each step
/// cancels delta-isomorphic subexpressions exactly as the derivation
/// cancelled categories; a modifier-shaped cancellation re-anchors the
/// merged cell at its new head.
inline UnifiedTable build_unified(const CGDerivation& d, const DepGraph& g) {
  EquivalenceReport check = verify_equivalences(g, d);
  if (!check.pass) {
    std::string what = "equivalence verification failed:";
    for (const std::string& f : check.failures) what += "\n  " + f;
    throw error(what);
  }

  UnifiedTable t;
  t.columns = d.sentence;
  t.placeholder.assign(d.sentence.size(), false);
  t.delta_values = g.delta_map(0);

  int n = d.sentence.size();
  struct LiveCell {
    DeltaExpr expr;
    int head;
  };
  std::map<TokenSet, LiveCell> cell_of;
  std::vector<std::optional<DeltaExpr>> row(n);
  for (int i = 0; i < n; ++i) {
    SpanState lex = SpanState::lexical(i, d.lexical_row[i]);
    DeltaExpr cell = detail::span_cell(d, lex, 0, &g);
    cell_of.emplace(lex.tokens, LiveCell{cell, i});
    row[i] = cell;
  }
  t.rows.push_back(row);

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const CGStep& s = d.steps[i];
    DeltaExpr functor_cell = cell_of.at(s.functor.tokens).expr;
    DeltaExpr argument_cell = cell_of.at(s.argument.tokens).expr;
    if (functor_cell.is_term())
      throw error("step " + std::to_string(s.step_no) +
                  ": functor cell has no argument slot");
    if (!(functor_cell.argument() == argument_cell))
      throw error("step " + std::to_string(s.step_no) +
                  ": delta cancellation mismatch: " +
                  print_delta(functor_cell) + " cannot consume " +
                  print_delta(argument_cell));

    bool last = i + 1 == d.steps.size();
    DeltaExpr merged = (s.modifier && !last)
                           ? detail::span_cell(d, s.result, i + 1, &g)
                           : functor_cell.result();
    cell_of.erase(s.functor.tokens);
    cell_of.erase(s.argument.tokens);
    cell_of.emplace(s.result.tokens, LiveCell{merged, s.result.head});

    UnifiedStep us;
    us.step_no = s.step_no;
    us.functor_col = s.functor.head;
    us.argument_col = s.argument.head;
    us.result_col = s.result.head;
    us.direction = s.direction;
    us.modifier = s.modifier;
    us.wrapped = s.wrapped;
    t.steps.push_back(us);

    row.assign(n, std::nullopt);
    for (const auto& [tokens, cell] : cell_of) row[cell.head] = cell.expr;
    t.rows.push_back(row);
  }

  if (d.steps.empty()) {
    t.final_cell = t.rows[0][0].value();
  } else {
    t.final_cell = cell_of.at(d.final.tokens).expr;
  }
  return t;
}

/// Reads the head-dependent relations back off the delta functions: in each
/// recorded cancellation the word with the smaller depth value heads the
/// other one.  Requires a value-annotated table.
inline DepGraph read_dependencies(const UnifiedTable& t) {
  if (!t.delta_values)
    throw error("table carries no numeric depth values to read from");
  const std::vector<int>& delta = *t.delta_values;
  std::vector<std::pair<int, int>> edges;
  for (const UnifiedStep& s : t.steps) {
    int f = s.functor_col;
    int a = s.argument_col;
    if (delta[f] == delta[a])
      throw error("step " + std::to_string(s.step_no) +
                  ": equal depth values cannot be ordered");
    if (delta[f] < delta[a])
      edges.emplace_back(f, a);
    else
      edges.emplace_back(a, f);
  }
  return DepGraph::build(t.columns.size(), edges);
}

/// Abbreviated table over explicitly given delta expressions; placeholder
/// columns render as "..." and never take part in a cancellation.
struct AbbrevColumn {
  std::string form;
  std::string pos;                  // empty for placeholders
  std::optional<DeltaExpr> expr;    // nullopt for placeholders
};

struct AbbrevStep {
  int functor = -1;   // column index
  int argument = -1;  // column index
};

inline UnifiedTable abbreviated(const std::vector<AbbrevColumn>& columns,
                                const std::vector<AbbrevStep>& steps) {
  if (columns.empty()) throw error("abbreviated table needs columns");
  UnifiedTable t;
  std::vector<Token> toks;
  for (std::size_t i = 0; i < columns.size(); ++i)
    toks.push_back(Token{static_cast<int>(i), columns[i].form, columns[i].pos});
  t.columns = Sentence(std::move(toks));
  t.placeholder.assign(columns.size(), false);

  std::vector<std::optional<DeltaExpr>> row(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].expr) {
      row[i] = columns[i].expr;
    } else {
      t.placeholder[i] = true;
    }
  }
  t.rows.push_back(row);

  std::map<int, DeltaExpr> live;
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (row[i]) live.emplace(static_cast<int>(i), *row[i]);

  int step_no = 0;
  for (const AbbrevStep& s : steps) {
    ++step_no;
    auto f = live.find(s.functor);
    auto a = live.find(s.argument);
    if (f == live.end() || a == live.end())
      throw script_error("abbreviated step " + std::to_string(step_no) +
                         " references a consumed or placeholder column");
    const DeltaExpr& functor = f->second;
    if (functor.is_term())
      throw type_error("abbreviated step " + std::to_string(step_no) +
                       ": functor " + print_delta(functor) +
                       " has no argument slot");
    Direction expected =
        functor.is_rightward() ? Direction::right : Direction::left;
    Direction actual =
        s.argument > s.functor ? Direction::right : Direction::left;
    if (expected != actual)
      throw type_error("abbreviated step " + std::to_string(step_no) +
                       ": argument on the wrong side");
    if (!(functor.argument() == a->second))
      throw type_error("abbreviated step " + std::to_string(step_no) + ": " +
                       print_delta(functor) + " cannot consume " +
                       print_delta(a->second));
    DeltaExpr merged = functor.result();
    UnifiedStep us;
    us.step_no = step_no;
    us.functor_col = s.functor;
    us.argument_col = s.argument;
    us.result_col = s.functor;
    us.direction = expected;
    t.steps.push_back(us);

    live.erase(s.argument);
    live.erase(s.functor);
    live.emplace(s.functor, merged);

    row.assign(columns.size(), std::nullopt);
    for (const auto& [col, cell] : live) row[col] = cell;
    t.rows.push_back(row);
  }

  if (live.size() == 1) {
    t.final_cell = live.begin()->second;
  } else if (!steps.empty()) {
    throw script_error("abbreviated steps leave more than one realized cell");
  } else {
    // zero-step schematic display; final cell is the leftmost realized one
    for (const auto& cell : t.rows[0])
      if (cell) {
        t.final_cell = *cell;
        break;
      }
  }
  return t;
}

/// Structural identity up to a consistent renaming of POS handles.
inline bool isomorphic_up_to_pos(const UnifiedTable& a, const UnifiedTable& b) {
  if (a.column_count() != b.column_count()) return false;
  if (a.rows.size() != b.rows.size()) return false;
  if (a.steps.size() != b.steps.size()) return false;
  if (a.placeholder != b.placeholder) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].functor_col != b.steps[i].functor_col) return false;
    if (a.steps[i].argument_col != b.steps[i].argument_col) return false;
    if (a.steps[i].direction != b.steps[i].direction) return false;
  }
  std::map<std::string, std::string> fwd, rev;
  struct Matcher {
    std::map<std::string, std::string>& fwd;
    std::map<std::string, std::string>& rev;
    bool match(const DeltaExpr& x, const DeltaExpr& y) {
      if (x.kind() != y.kind()) return false;
      if (x.is_term()) {
        auto f = fwd.find(x.pos());
        auto r = rev.find(y.pos());
        if (f == fwd.end() && r == rev.end()) {
          fwd[x.pos()] = y.pos();
          rev[y.pos()] = x.pos();
          return true;
        }
        return f != fwd.end() && f->second == y.pos() && r != rev.end() &&
               r->second == x.pos();
      }
      return match(x.result(), y.result()) && match(x.argument(), y.argument());
    }
  } matcher{fwd, rev};
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (int c = 0; c < a.column_count(); ++c) {
      bool ha = a.rows[r][c].has_value();
      bool hb = b.rows[r][c].has_value();
      if (ha != hb) return false;
      if (ha && !matcher.match(*a.rows[r][c], *b.rows[r][c])) return false;
    }
  }
  return true;
}

namespace detail {

inline std::size_t utf8_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

inline std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  std::size_t w = utf8_width(s);
  while (w++ < width) out += ' ';
  return out;
}

}  // namespace detail

/// Fixed-width grid with arrow glyphs at the cells about to merge; each
/// non-final row carries the following step's arrows.
inline std::string render_text(const UnifiedTable& t) {
  int n = t.column_count();
  std::size_t nrows = t.rows.size();
  std::vector<std::vector<std::string>> grid(nrows + 1,
                                             std::vector<std::string>(n + 1));
  grid[0][0] = "";
  for (int c = 0; c < n; ++c) {
    const Token& tok = t.columns[c];
    grid[0][c + 1] =
        t.placeholder[c] ? tok.form : tok.form + ":" + tok.pos;
  }
  for (std::size_t r = 0; r < nrows; ++r) {
    grid[r + 1][0] = r == 0 ? "lex" : "s" + std::to_string(r);
    for (int c = 0; c < n; ++c) {
      std::string cell;
      if (t.placeholder[c]) {
        cell = r == 0 ? "..." : "";
      } else if (t.rows[r][c]) {
        cell = print_delta(*t.rows[r][c]);
        if (r < t.steps.size()) {
          const UnifiedStep& s = t.steps[r];
          if (c == s.functor_col)
            cell += s.argument_col > s.functor_col ? " \u2192" : " \u2190";
          else if (c == s.argument_col)
            cell += s.functor_col > s.argument_col ? " \u2192" : " \u2190";
        }
      }
      grid[r + 1][c + 1] = cell;
    }
  }
  std::vector<std::size_t> widths(n + 1, 0);
  for (const auto& row : grid)
    for (int c = 0; c <= n; ++c)
      widths[c] = std::max(widths[c], detail::utf8_width(row[c]));
  std::ostringstream out;
  for (const auto& row : grid) {
    std::string line;
    for (int c = 0; c <= n; ++c) {
      line += detail::pad(row[c], widths[c]);
      if (c < n) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

/// Plain tabular; needs nothing beyond math mode.
inline std::string render_latex(const UnifiedTable& t) {
  int n = t.column_count();
  auto math = [](const DeltaExpr& e) {
    struct Printer {
      static std::string print(const DeltaExpr& e) {
        if (e.is_term()) return "\\delta(" + e.pos() + ")";
        if (e.is_rightward())
          return bracket(e.result()) + "/" + bracket(e.argument());
        return bracket(e.argument()) + "\\backslash " + bracket(e.result());
      }
      static std::string bracket(const DeltaExpr& e) {
        if (e.is_term()) return print(e);
        return "[" + print(e) + "]";
      }
    };
    return "$" + Printer::print(e) + "$";
  };
  std::ostringstream out;
  out << "\\begin{tabular}{l";
  for (int c = 0; c < n; ++c) out << "l";
  out << "}\n";
  out << " ";
  for (int c = 0; c < n; ++c) {
    const Token& tok = t.columns[c];
    out << " & " << (t.placeholder[c] ? "\\dots" : tok.form);
  }
  out << " \\\\\n ";
  for (int c = 0; c < n; ++c)
    out << " & " << (t.placeholder[c] ? "" : t.columns[c].pos);
  out << " \\\\\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r == 0 ? "lex" : "s" + std::to_string(r));
    for (int c = 0; c < n; ++c) {
      out << " & ";
      if (t.placeholder[c]) {
        if (r == 0) out << "\\dots";
      } else if (t.rows[r][c]) {
        out << math(*t.rows[r][c]);
      }
    }
    out << " \\\\\n";
  }
  out << "\\end{tabular}\n";
  return out.str();
}

}  // namespace unirep

#endif

#ifndef UNIREP_DELTA_EXPR_HPP
#define UNIREP_DELTA_EXPR_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "unirep/error.hpp"

namespace unirep {

/// A category expression over delta-terms instead of atoms, as printed in
/// the unified table.  Each term names a POS handle and may carry the
/// token index it refers to plus that token's numeric depth value.
class DeltaExpr {
 public:
  enum class Kind { term, rightward, leftward };

  DeltaExpr() : node_(term_node("S", -1, std::nullopt)) {}

  static DeltaExpr term(std::string pos, int token = -1,
                        std::optional<int> value = std::nullopt) {
    return DeltaExpr(term_node(std::move(pos), token, value));
  }

  static DeltaExpr rightward(DeltaExpr result, DeltaExpr argument) {
    return DeltaExpr(std::make_shared<const Node>(
        Node{Kind::rightward, "", -1, std::nullopt, result.node_,
             argument.node_}));
  }

  static DeltaExpr leftward(DeltaExpr argument, DeltaExpr result) {
    return DeltaExpr(std::make_shared<const Node>(
        Node{Kind::leftward, "", -1, std::nullopt, result.node_,
             argument.node_}));
  }

  Kind kind() const { return node_->kind; }
  bool is_term() const { return node_->kind == Kind::term; }
  bool is_rightward() const { return node_->kind == Kind::rightward; }
  bool is_leftward() const { return node_->kind == Kind::leftward; }

  const std::string& pos() const {
    require_term();
    return node_->pos;
  }
  int token() const {
    require_term();
    return node_->token;
  }
  std::optional<int> value() const {
    require_term();
    return node_->value;
  }

  DeltaExpr result() const {
    if (is_term()) throw error("result() on a delta term");
    return DeltaExpr(node_->result);
  }
  DeltaExpr argument() const {
    if (is_term()) throw error("argument() on a delta term");
    return DeltaExpr(node_->argument);
  }

  /// The term at the end of the result chain; its token is the span head.
  DeltaExpr principal_term() const {
    DeltaExpr e = *this;
    while (!e.is_term()) e = e.result();
    return e;
  }

  /// Structural equality over POS handles (token indices and values are
  /// annotations, not identity).
  friend bool operator==(const DeltaExpr& a, const DeltaExpr& b) {
    return equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const DeltaExpr& a, const DeltaExpr& b) {
    return !(a == b);
  }

 private:
  struct Node {
    Kind kind;
    std::string pos;
    int token;
    std::optional<int> value;
    std::shared_ptr<const Node> result;
    std::shared_ptr<const Node> argument;
  };

  explicit DeltaExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  static std::shared_ptr<const Node> term_node(std::string pos, int token,
                                               std::optional<int> value) {
    return std::make_shared<const Node>(
        Node{Kind::term, std::move(pos), token, value, nullptr, nullptr});
  }

  static bool equal(const Node* a, const Node* b) {
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::term) return a->pos == b->pos;
    return equal(a->result.get(), b->result.get()) &&
           equal(a->argument.get(), b->argument.get());
  }

  void require_term() const {
    if (!is_term()) throw error("delta term accessor on a slash expression");
  }

  std::shared_ptr<const Node> node_;
};

/// Canonical notation: terms as "δ(Adv)", grouping with square brackets as
/// in the unified table, e.g. "[δ(Conj)/δ(V2)]/δ(V3)".
inline std::string print_delta(const DeltaExpr& e) {
  struct Printer {
    static std::string print(const DeltaExpr& e) {
      if (e.is_term()) return "δ(" + e.pos() + ")";
      if (e.is_rightward())
        return bracket(e.result()) + "/" + bracket(e.argument());
      return bracket(e.argument()) + "\\" + bracket(e.result());
    }
    static std::string bracket(const DeltaExpr& e) {
      if (e.is_term()) return print(e);
      return "[" + print(e) + "]";
    }
  };
  return Printer::print(e);
}

namespace detail {

class DeltaParser {
 public:
  explicit DeltaParser(const std::string& text) : text_(text) {}

  DeltaExpr parse() {
    DeltaExpr e = expression();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("trailing input after delta expression", pos_);
    return e;
  }

 private:
  DeltaExpr expression() {
    DeltaExpr lhs = primary();
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '/' && text_[pos_] != '\\'))
      return lhs;
    char slash = text_[pos_++];
    DeltaExpr rhs = primary();
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\'))
      throw parse_error("ambiguous delta expression; add brackets", pos_);
    if (slash == '/') return DeltaExpr::rightward(lhs, rhs);
    return DeltaExpr::leftward(lhs, rhs);
  }

  DeltaExpr primary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw parse_error("unexpected end of delta expression", pos_);
    char c = text_[pos_];
    if (c == '(' || c == '[') {
      char close = c == '(' ? ')' : ']';
      ++pos_;
      DeltaExpr inner = expression();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != close)
        throw parse_error("unbalanced grouping in delta expression", pos_);
      ++pos_;
      return inner;
    }
    return term();
  }

  // "δ(Adv)" (UTF-8) or the ASCII spelling "delta(Adv)".
  DeltaExpr term() {
    if (text_.compare(pos_, 2, "δ") == 0)
      pos_ += 2;
    else if (text_.compare(pos_, 5, "delta") == 0)
      pos_ += 5;
    else
      throw parse_error("expected a delta term", pos_);
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(')
      throw parse_error("expected '(' after delta", pos_);
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
    if (pos_ >= text_.size())
      throw parse_error("unterminated delta term", pos_);
    std::string pos_handle = text_.substr(start, pos_ - start);
    ++pos_;
    while (!pos_handle.empty() && pos_handle.back() == ' ')
      pos_handle.pop_back();
    std::size_t lead = pos_handle.find_first_not_of(' ');
    if (lead != std::string::npos) pos_handle = pos_handle.substr(lead);
    if (pos_handle.empty())
      throw parse_error("empty POS handle in delta term", start);
    return DeltaExpr::term(pos_handle);
  }

  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline DeltaExpr parse_delta(const std::string& text) {
  return detail::DeltaParser(text).parse();
}

}  // namespace unirep

#endif

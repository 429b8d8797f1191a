#ifndef UNIREP_CATEGORY_HPP
#define UNIREP_CATEGORY_HPP

#include <cctype>
#include <memory>
#include <string>
#include <utility>

#include "unirep/error.hpp"

namespace unirep {

/// A Lambek slash category: atomic, rightward (X/Y) or leftward (Y\X).
///
/// Convention: X/Y is a function X that accepts an argument Y to its right;
/// Y\X seeks Y on the left and yields X.  Immutable value type; copies share
/// structure.
class Category {
 public:
  enum class Kind { atom, rightward, leftward };

  Category() : node_(atom_node("S")) {}

  static Category atom(std::string name) {
    if (name.empty()) throw error("category atom must be non-empty");
    return Category(atom_node(std::move(name)));
  }

  /// result/argument
  static Category rightward(Category result, Category argument) {
    return Category(std::make_shared<const Node>(
        Node{Kind::rightward, "", result.node_, argument.node_}));
  }

  /// argument\result
  static Category leftward(Category argument, Category result) {
    return Category(std::make_shared<const Node>(
        Node{Kind::leftward, "", result.node_, argument.node_}));
  }

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind == Kind::atom; }
  bool is_rightward() const { return node_->kind == Kind::rightward; }
  bool is_leftward() const { return node_->kind == Kind::leftward; }

  const std::string& atom_name() const {
    if (!is_atom()) throw error("atom_name() on non-atomic category");
    return node_->name;
  }

  Category result() const {
    if (is_atom()) throw error("result() on atomic category");
    return Category(node_->result);
  }

  Category argument() const {
    if (is_atom()) throw error("argument() on atomic category");
    return Category(node_->argument);
  }

  /// The atom at the end of the result chain (X for (..((X|A)|B)..)).
  Category principal_atom() const {
    Category c = *this;
    while (!c.is_atom()) c = c.result();
    return c;
  }

  /// X/X or X\X: result structurally equal to argument.
  bool modifier_shaped() const {
    return !is_atom() && result() == argument();
  }

  std::size_t depth() const {
    if (is_atom()) return 0;
    return 1 + std::max(result().depth(), argument().depth());
  }

  friend bool operator==(const Category& a, const Category& b) {
    return equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Category& a, const Category& b) {
    return !(a == b);
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> result;
    std::shared_ptr<const Node> argument;
  };

  explicit Category(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> atom_node(std::string name) {
    return std::make_shared<const Node>(
        Node{Kind::atom, std::move(name), nullptr, nullptr});
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::atom) return a->name == b->name;
    return equal(a->result.get(), b->result.get()) &&
           equal(a->argument.get(), b->argument.get());
  }

  std::shared_ptr<const Node> node_;
};

/// Fully parenthesized canonical notation; inverse of parse_category.
inline std::string print_category(const Category& c) {
  auto wrap = [](const Category& sub) {
    struct Printer {
      static std::string print(const Category& c) {
        if (c.is_atom()) return c.atom_name();
        std::string lhs, rhs;
        if (c.is_rightward()) {
          lhs = bracket(c.result());
          rhs = bracket(c.argument());
          return lhs + "/" + rhs;
        }
        lhs = bracket(c.argument());
        rhs = bracket(c.result());
        return lhs + "\\" + rhs;
      }
      static std::string bracket(const Category& c) {
        if (c.is_atom()) return c.atom_name();
        return "(" + print(c) + ")";
      }
    };
    return Printer::print(sub);
  };
  return wrap(c);
}

namespace detail {

class CategoryParser {
 public:
  explicit CategoryParser(const std::string& text) : text_(text) {}

  Category parse() {
    Category c = expression();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("trailing input after category", pos_);
    return c;
  }

 private:
  // expression := primary [slash primary]
  // A second top-level slash is ambiguous and rejected.
  Category expression() {
    Category lhs = primary();
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '/' && text_[pos_] != '\\'))
      return lhs;
    char slash = text_[pos_++];
    Category rhs = primary();
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\'))
      throw parse_error(
          "ambiguous unparenthesized nesting; use explicit parentheses", pos_);
    if (slash == '/') return Category::rightward(lhs, rhs);
    return Category::leftward(lhs, rhs);
  }

  Category primary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw parse_error("unexpected end of category", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Category inner = expression();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw parse_error("unbalanced parentheses", pos_);
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return atom();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  Category atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    return Category::atom(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse slash notation.  Nested categories must be fully parenthesized.
inline Category parse_category(const std::string& text) {
  return detail::CategoryParser(text).parse();
}

}  // namespace unirep

#endif

#ifndef UNIREP_SENTENCE_HPP
#define UNIREP_SENTENCE_HPP

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "unirep/category.hpp"
#include "unirep/error.hpp"

namespace unirep {

/// One surface unit: a word or a bound morpheme (tokens arrive pre-segmented).
struct Token {
  int index = 0;
  std::string form;
  std::string pos;
};

struct Sentence {
  std::vector<Token> tokens;

  Sentence() = default;
  explicit Sentence(std::vector<Token> toks) : tokens(std::move(toks)) {
    if (tokens.empty()) throw error("sentence must have at least one token");
    for (std::size_t i = 0; i < tokens.size(); ++i)
      tokens[i].index = static_cast<int>(i);
  }

  static Sentence of(const std::vector<std::pair<std::string, std::string>>& items) {
    std::vector<Token> toks;
    for (const auto& [form, pos] : items) toks.push_back(Token{0, form, pos});
    return Sentence(std::move(toks));
  }

  int size() const { return static_cast<int>(tokens.size()); }
  const Token& operator[](int i) const { return tokens.at(i); }
};

/// Maps each lexical item (form, optionally disambiguated by POS) to its set
/// of categories.  The atom alphabet is open: it is whatever the entries use.
class Lexicon {
 public:
  void add(const std::string& form, const std::string& pos, const Category& c) {
    entries_[key(form, pos)].push_back(c);
    dedup(entries_[key(form, pos)]);
    by_form_[form].push_back(c);
    dedup(by_form_[form]);
    collect_atoms(c);
  }

  /// Entries for (form, pos); falls back to all entries for the bare form.
  std::vector<Category> lookup(const std::string& form,
                               const std::string& pos) const {
    auto it = entries_.find(key(form, pos));
    if (it != entries_.end()) return it->second;
    auto f = by_form_.find(form);
    if (f != by_form_.end()) return f->second;
    return {};
  }

  bool covers(const Sentence& s) const {
    for (const Token& t : s.tokens)
      if (lookup(t.form, t.pos).empty()) return false;
    return true;
  }

  const std::set<std::string>& atoms() const { return atoms_; }

 private:
  static std::string key(const std::string& form, const std::string& pos) {
    return form + "\t" + pos;
  }

  static void dedup(std::vector<Category>& cs) {
    std::vector<Category> out;
    for (const Category& c : cs) {
      bool seen = false;
      for (const Category& o : out)
        if (o == c) seen = true;
      if (!seen) out.push_back(c);
    }
    cs = std::move(out);
  }

  void collect_atoms(const Category& c) {
    if (c.is_atom()) {
      atoms_.insert(c.atom_name());
      return;
    }
    collect_atoms(c.result());
    collect_atoms(c.argument());
  }

  std::map<std::string, std::vector<Category>> entries_;
  std::map<std::string, std::vector<Category>> by_form_;
  std::set<std::string> atoms_;
};

/// Lexicon file: one `form<TAB>pos<TAB>category` entry per line.
/// Lines starting with '#' are comments; duplicate (form,pos) lines
/// accumulate into the entry's category set.
inline Lexicon read_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 3)
      throw io_error("lexicon line " + std::to_string(lineno) +
                     ": expected form<TAB>pos<TAB>category");
    try {
      lex.add(fields[0], fields[1], parse_category(fields[2]));
    } catch (const parse_error& e) {
      throw io_error("lexicon line " + std::to_string(lineno) + ": " +
                     e.what());
    }
  }
  return lex;
}

inline Lexicon read_lexicon_text(const std::string& text) {
  std::istringstream in(text);
  return read_lexicon(in);
}

}  // namespace unirep

#endif

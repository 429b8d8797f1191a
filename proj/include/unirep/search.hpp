#ifndef UNIREP_SEARCH_HPP
#define UNIREP_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unirep/derivation.hpp"
#include "unirep/error.hpp"
#include "unirep/sentence.hpp"

namespace unirep {

struct SearchOptions {
  std::uint64_t budget = 1'000'000;  // expansion cap
  std::optional<int> max_wrapped;    // keep derivations with <= k wrapped steps
};

namespace detail {

struct Completion {
  // Canonical key: sorted multiset of (functor_owner, argument_owner,
  // direction, wrapped).  Two step orders that cancel the same slashes the
  // same way are one derivation.
  std::string key;
  int wraps = 0;
  std::vector<ScriptStep> script;
};

inline bool completion_before(const Completion& a, const Completion& b) {
  if (a.wraps != b.wraps) return a.wraps < b.wraps;
  for (std::size_t i = 0; i < a.script.size() && i < b.script.size(); ++i) {
    if (a.script[i].functor != b.script[i].functor)
      return a.script[i].functor < b.script[i].functor;
    if (a.script[i].argument != b.script[i].argument)
      return a.script[i].argument < b.script[i].argument;
  }
  return a.script.size() < b.script.size();
}

class DeriveSearch {
 public:
  DeriveSearch(const Category& goal, const SearchOptions& opts)
      : goal_(goal), opts_(opts) {}

  std::vector<Completion> run(std::vector<SpanState> initial) {
    return complete(std::move(initial));
  }

  std::uint64_t expansions() const { return expansions_; }

 private:
  struct CandidateStep {
    std::size_t functor, argument;
    int interveners;
    CGStep step;
  };

  std::string state_key(const std::vector<SpanState>& live) const {
    std::vector<const SpanState*> order;
    for (const SpanState& s : live) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const SpanState* a, const SpanState* b) {
                return tokenset::min_index(a->tokens) <
                       tokenset::min_index(b->tokens);
              });
    std::string key;
    for (const SpanState* s : order) {
      key += std::to_string(s->tokens);
      key += ':';
      key += print_category(s->category);
      key += ':';
      key += std::to_string(s->head);
      key += ':';
      key += s->prov.serialize();
      key += ';';
    }
    return key;
  }

  std::vector<CandidateStep> candidates(const std::vector<SpanState>& live) {
    std::vector<CandidateStep> out;
    for (std::size_t f = 0; f < live.size(); ++f) {
      if (live[f].category.is_atom()) continue;
      for (std::size_t a = 0; a < live.size(); ++a) {
        if (f == a) continue;
        Direction dir = side_of(live[f], live[a]);
        Direction expected = live[f].category.is_rightward()
                                 ? Direction::right
                                 : Direction::left;
        if (dir != expected) continue;
        if (!(live[a].category == live[f].category.argument())) continue;
        out.push_back({f, a, 0, apply_pair(live[f], live[a], live)});
        out.back().interveners = out.back().step.intervener_count;
      }
    }
    // Adjacent first, then wrapping over increasing k; ties by head order.
    std::sort(out.begin(), out.end(),
              [&](const CandidateStep& x, const CandidateStep& y) {
                if (x.interveners != y.interveners)
                  return x.interveners < y.interveners;
                if (x.step.functor.head != y.step.functor.head)
                  return x.step.functor.head < y.step.functor.head;
                return x.step.argument.head < y.step.argument.head;
              });
    return out;
  }

  static std::string step_tag(const CGStep& s) {
    return std::to_string(s.cg_pair.first) + "," +
           std::to_string(s.cg_pair.second) + "," +
           (s.direction == Direction::right ? "R" : "L") +
           (s.wrapped ? "w" : "a");
  }

  std::vector<Completion> complete(std::vector<SpanState> live) {
    std::string key = state_key(live);
    auto memo = memo_.find(key);
    if (memo != memo_.end()) return memo->second;

    std::vector<Completion> results;
    if (live.size() == 1) {
      if (live[0].category == goal_) results.push_back(Completion{});
      memo_[key] = results;
      return results;
    }

    std::map<std::string, Completion> dedup;
    for (const CandidateStep& cand : candidates(live)) {
      if (++expansions_ > opts_.budget)
        throw budget_error("search budget exceeded (" +
                           std::to_string(opts_.budget) + " expansions)");
      std::vector<SpanState> next;
      for (std::size_t i = 0; i < live.size(); ++i)
        if (i != cand.functor && i != cand.argument) next.push_back(live[i]);
      next.push_back(cand.step.result);
      for (Completion tail : complete(std::move(next))) {
        Completion c;
        c.wraps = tail.wraps + (cand.step.wrapped ? 1 : 0);
        c.script.push_back(
            ScriptStep{cand.step.functor.head, cand.step.argument.head});
        c.script.insert(c.script.end(), tail.script.begin(),
                        tail.script.end());
        // Rebuild the multiset key with this step's tag folded in.
        std::vector<std::string> tags;
        {
          std::string acc;
          for (char ch : tail.key) {
            if (ch == '|') {
              tags.push_back(acc);
              acc.clear();
            } else {
              acc += ch;
            }
          }
          if (!acc.empty()) tags.push_back(acc);
        }
        tags.push_back(step_tag(cand.step));
        std::sort(tags.begin(), tags.end());
        for (const std::string& t : tags) {
          if (!c.key.empty()) c.key += '|';
          c.key += t;
        }
        auto it = dedup.find(c.key);
        if (it == dedup.end() || completion_before(c, it->second))
          dedup[c.key] = std::move(c);
      }
    }
    for (auto& [k, c] : dedup) results.push_back(std::move(c));
    memo_[key] = results;
    return results;
  }

  static Direction side_of(const SpanState& f, const SpanState& a) {
    return unirep::detail::side_of(f, a);
  }

  Category goal_;
  SearchOptions opts_;
  std::unordered_map<std::string, std::vector<Completion>> memo_;
  std::uint64_t expansions_ = 0;
};

}  // namespace detail

/// Exhaustive search over lexical choices and step orders for derivations of
/// `goal`, deduplicated by their cancellation multiset and ordered by
/// (wrapped steps ascending, then lexicographic step order).
inline std::vector<CGDerivation> derive(const Sentence& sentence,
                                        const Lexicon& lexicon,
                                        const Category& goal,
                                        const SearchOptions& opts = {}) {
  if (sentence.size() > 64) throw error("sentence longer than 64 tokens");
  std::vector<std::vector<Category>> choices;
  for (const Token& t : sentence.tokens) {
    auto entries = lexicon.lookup(t.form, t.pos);
    if (entries.empty())
      throw error("no lexicon entry for token '" + t.form + "'");
    std::sort(entries.begin(), entries.end(),
              [](const Category& a, const Category& b) {
                return print_category(a) < print_category(b);
              });
    choices.push_back(entries);
  }

  struct Found {
    detail::Completion completion;
    std::vector<Category> row;
  };
  std::vector<Found> found;

  std::vector<std::size_t> pick(choices.size(), 0);
  std::uint64_t budget_used = 0;
  while (true) {
    std::vector<Category> row;
    std::vector<SpanState> initial;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      row.push_back(choices[i][pick[i]]);
      initial.push_back(SpanState::lexical(static_cast<int>(i), row.back()));
    }
    SearchOptions sub = opts;
    if (budget_used >= opts.budget)
      throw budget_error("search budget exceeded across lexical choices");
    sub.budget = opts.budget - budget_used;
    detail::DeriveSearch search(goal, sub);
    for (detail::Completion& c : search.run(std::move(initial)))
      found.push_back({std::move(c), row});
    budget_used += search.expansions();

    // next assignment in lexicographic order
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) {
        i = choices.size() + 1;
        break;
      }
    }
    if (i == choices.size() + 1 || choices.empty()) break;
  }

  std::stable_sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return detail::completion_before(a.completion, b.completion);
  });

  std::vector<CGDerivation> out;
  for (const Found& f : found) {
    CGDerivation d = replay(sentence, f.row, f.completion.script);
    if (opts.max_wrapped && d.wrapped_count() > *opts.max_wrapped) continue;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace unirep

#endif

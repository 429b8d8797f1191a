#ifndef UNIREP_ANALYSIS_HPP
#define UNIREP_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unirep/error.hpp"

namespace unirep {

/// Unsigned big integer, base 1e9 limbs.  The growth arguments live or die
/// on exact counts, so no silent overflow anywhere.
class BigUint {
 public:
  BigUint() : limbs_{0} {}
  BigUint(std::uint64_t v) {  // NOLINT: implicit by design
    do {
      limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    } while (v);
  }

  BigUint& operator*=(std::uint64_t m) {
    if (m >= kBase) {
      // split to keep the per-limb product within 64 bits
      BigUint high = *this;
      high *= m / kBase;
      high.shift_limb();
      *this *= m % kBase;
      *this += high;
      return *this;
    }
    std::uint64_t carry = 0;
    for (std::uint32_t& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
    trim();
    return *this;
  }

  BigUint& operator+=(const BigUint& other) {
    std::uint64_t carry = 0;
    std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t cur = carry + limbs_[i] +
                          (i < other.limbs_.size() ? other.limbs_[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  static BigUint pow(std::uint64_t base, std::uint64_t exponent) {
    BigUint out(1);
    for (std::uint64_t i = 0; i < exponent; ++i) out *= base;
    return out;
  }

  std::string to_string() const {
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      out += std::string(9 - part.size(), '0') + part;
    }
    return out;
  }

  std::optional<std::uint64_t> to_u64() const {
    if (limbs_.size() > 3) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      if (v > (~std::uint64_t{0} - limbs_[i]) / kBase) return std::nullopt;
      v = v * kBase + limbs_[i];
    }
    return v;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) {
    return a.limbs_ == b.limbs_;
  }
  friend bool operator==(const BigUint& a, std::uint64_t b) {
    return a == BigUint(b);
  }

 private:
  static constexpr std::uint64_t kBase = 1'000'000'000;

  void shift_limb() { limbs_.insert(limbs_.begin(), 0); }

  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<std::uint32_t> limbs_;
};

struct ComplexityReport {
  std::uint64_t n_formalisms = 0;
  std::uint64_t n_sentences = 0;
  BigUint representation_count;                 // f^n
  std::optional<BigUint> footnote_variant;      // (1^n x n) = n, when f == 1
  BigUint mapping_count_per_item;               // M = N(N-1)
  BigUint total_mappings;                       // k * M
};

/// f^n possible joint representations of n sentences across f formalisms.
/// For f = 1 the footnote variant (1^n x n) = n is reported alongside, not
/// substituted.
inline BigUint representation_count(std::uint64_t formalisms,
                                    std::uint64_t sentences) {
  if (formalisms < 1) throw error("formalism count must be >= 1");
  return BigUint::pow(formalisms, sentences);
}

inline ComplexityReport complexity_report(std::uint64_t formalisms,
                                          std::uint64_t sentences) {
  ComplexityReport r;
  r.n_formalisms = formalisms;
  r.n_sentences = sentences;
  r.representation_count = representation_count(formalisms, sentences);
  if (formalisms == 1) r.footnote_variant = BigUint(sentences);
  BigUint m(formalisms);
  m *= formalisms - 1;
  r.mapping_count_per_item = m;
  BigUint total = m;
  total *= sentences;
  r.total_mappings = total;
  return r;
}

/// M = N(N-1) ordered formalism pairs, and k*M translations for k sentences.
inline std::pair<BigUint, BigUint> mapping_counts(std::uint64_t formalisms,
                                                  std::uint64_t sentences) {
  if (formalisms < 1) throw error("formalism count must be >= 1");
  BigUint m(formalisms);
  m *= formalisms - 1;
  BigUint total = m;
  total *= sentences;
  return {m, total};
}

/// All f^n sentence-formalism assignments in lexicographic order, each entry
/// rendered "S1^PSG" style.
inline std::vector<std::vector<std::string>> enumerate_assignments(
    const std::vector<std::string>& formalisms, std::uint64_t sentences,
    std::uint64_t cap = 100'000) {
  if (formalisms.empty()) throw error("need at least one formalism label");
  BigUint count = representation_count(formalisms.size(), sentences);
  auto as_u64 = count.to_u64();
  if (!as_u64 || *as_u64 > cap)
    throw error("assignment enumeration exceeds cap of " +
                std::to_string(cap));
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> pick(sentences, 0);
  while (true) {
    std::vector<std::string> tuple;
    for (std::uint64_t s = 0; s < sentences; ++s)
      tuple.push_back("S" + std::to_string(s + 1) + "^" + formalisms[pick[s]]);
    out.push_back(std::move(tuple));
    std::size_t i = sentences;
    bool done = true;
    while (i > 0) {
      --i;
      if (++pick[i] < formalisms.size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done) break;
  }
  return out;
}

/// All interleavings of two element-disjoint lists that preserve each list's
/// internal order; |result| = C(|l1|+|l2|, |l1|).
inline std::set<std::vector<std::string>> sequence_union(
    const std::vector<std::string>& l1, const std::vector<std::string>& l2) {
  for (const std::string& x : l1)
    for (const std::string& y : l2)
      if (x == y) throw error("sequence union requires disjoint lists: '" +
                              x + "' appears in both");
  std::set<std::vector<std::string>> out;
  std::vector<std::string> acc;
  struct Interleave {
    const std::vector<std::string>& l1;
    const std::vector<std::string>& l2;
    std::set<std::vector<std::string>>& out;
    std::vector<std::string>& acc;
    void go(std::size_t i, std::size_t j) {
      if (i == l1.size() && j == l2.size()) {
        out.insert(acc);
        return;
      }
      if (i < l1.size()) {
        acc.push_back(l1[i]);
        go(i + 1, j);
        acc.pop_back();
      }
      if (j < l2.size()) {
        acc.push_back(l2[j]);
        go(i, j + 1);
        acc.pop_back();
      }
    }
  } rec{l1, l2, out, acc};
  rec.go(0, 0);
  return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace unirep

#endif

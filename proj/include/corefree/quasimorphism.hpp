#pragma once

// Exact quasimorphism arithmetic.
//
// An AlternatingFunction is a finitely supported f: Z -> Q with f(-m) = -f(m)
// and f(0) = 0, stored by its values on positive integers. A SplitQM attaches
// one such function to each free factor <x_i> of F_n and sums factor values
// over the syllables of a word. Its defect is the max of the factor defects.
//
// All hot paths scale values to a common denominator and work in int64.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/rational.hpp"
#include "corefree/word.hpp"

namespace corefree {

class AlternatingFunction {
 public:
  AlternatingFunction() = default;
  AlternatingFunction(std::initializer_list<std::pair<std::int64_t, Rational>> values) {
    for (const auto& [m, v] : values) set(m, v);
  }

  /// Sets f(m) (and implicitly f(-m) = -f(m)). Zero values are dropped.
  void set(std::int64_t m, Rational value) {
    if (m == 0) {
      if (value.numerator() != 0) throw Error(ErrorKind::precondition, "alternating function has f(0) = 0");
      return;
    }
    if (m < 0) {
      m = -m;
      value = -value;
    }
    if (value.numerator() == 0) {
      values_.erase(m);
    } else {
      values_[m] = value;
    }
  }

  Rational operator()(std::int64_t m) const {
    const auto it = values_.find(m >= 0 ? m : -m);
    if (it == values_.end()) return Rational(0);
    return m >= 0 ? it->second : -it->second;
  }

  /// Values on the positive part of the support, keyed by m > 0.
  const std::map<std::int64_t, Rational>& values() const { return values_; }

  /// Largest m with f(m) != 0; 0 for the zero function.
  std::int64_t support_bound() const { return values_.empty() ? 0 : values_.rbegin()->first; }
  bool is_zero() const { return values_.empty(); }

  friend bool operator==(const AlternatingFunction&, const AlternatingFunction&) = default;

 private:
  std::map<std::int64_t, Rational> values_;
};

namespace detail {

/// Numerators of f over a fixed denominator, for |m| <= bound.
struct ScaledTable {
  std::int64_t bound = 0;
  std::vector<std::int64_t> positive;  // positive[m] = D * f(m), 0 <= m <= bound

  std::int64_t at(std::int64_t m) const {
    const std::int64_t a = m >= 0 ? m : -m;
    if (a > bound) return 0;
    return m >= 0 ? positive[static_cast<std::size_t>(a)] : -positive[static_cast<std::size_t>(a)];
  }
};

inline std::int64_t common_denominator(const AlternatingFunction& f, std::int64_t d = 1) {
  for (const auto& [m, v] : f.values()) d = checked_lcm(d, v.denominator());
  return d;
}

inline ScaledTable scale(const AlternatingFunction& f, std::int64_t denominator) {
  ScaledTable t;
  t.bound = f.support_bound();
  t.positive.assign(static_cast<std::size_t>(t.bound) + 1, 0);
  constexpr std::int64_t kLimit = std::int64_t{1} << 60;
  for (const auto& [m, v] : f.values()) {
    const std::int64_t num = checked_mul_i64(v.numerator(), denominator / v.denominator());
    if (num >= kLimit || num <= -kLimit) {
      throw Error(ErrorKind::overflow, "function value too large for exact evaluation");
    }
    t.positive[static_cast<std::size_t>(m)] = num;
  }
  return t;
}

/// 0, 1, -1, 2, -2, ..., w, -w
inline std::vector<std::int64_t> centered_range(std::int64_t w) {
  std::vector<std::int64_t> out{0};
  for (std::int64_t k = 1; k <= w; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

}  // namespace detail

struct DefectReport {
  Rational value;
  std::int64_t m = 0;  // witness pair: |f(m+n) - f(m) - f(n)| = value
  std::int64_t n = 0;
};

/// Default search window for defect_z: 2S + 2 for support bound S. Any pair
/// outside it has all three arguments outside the support, or realizes a
/// value already realized inside.
inline std::int64_t defect_window(const AlternatingFunction& f) {
  return 2 * f.support_bound() + 2;
}

/// sup over m, n in Z of |f(m+n) - f(m) - f(n)|, by exhaustive search over
/// [-window, window]^2. The witness is the first maximizer in the scan order
/// 0, 1, -1, 2, -2, ... for m (outer) and n (inner).
inline DefectReport defect_z(const AlternatingFunction& f, std::int64_t window) {
  const std::int64_t den = detail::common_denominator(f);
  const detail::ScaledTable t = detail::scale(f, den);
  std::int64_t best = 0, bm = 0, bn = 0;
  const auto order = detail::centered_range(window);
  for (std::int64_t m : order) {
    const std::int64_t fm = t.at(m);
    for (std::int64_t n : order) {
      const std::int64_t v = std::llabs(t.at(m + n) - fm - t.at(n));
      if (v > best) {
        best = v;
        bm = m;
        bn = n;
      }
    }
  }
  return DefectReport{Rational(best, den), bm, bn};
}

inline DefectReport defect_z(const AlternatingFunction& f) {
  return defect_z(f, defect_window(f));
}

/// Split quasimorphism on F_n: factor i (1-based) lives on <x_i>.
class SplitQM {
 public:
  SplitQM() = default;
  SplitQM(std::size_t rank, std::vector<AlternatingFunction> factors)
      : rank_(rank), factors_(std::move(factors)) {
    if (factors_.size() != rank_) {
      throw Error(ErrorKind::rank_mismatch, "split quasimorphism needs one factor per generator (" +
                                                std::to_string(rank_) + "), got " +
                                                std::to_string(factors_.size()));
    }
    for (const auto& f : factors_) denominator_ = detail::common_denominator(f, denominator_);
    for (const auto& f : factors_) tables_.push_back(detail::scale(f, denominator_));
  }

  std::size_t rank() const { return rank_; }
  const std::vector<AlternatingFunction>& factors() const { return factors_; }
  const AlternatingFunction& factor(Label i) const { return factors_.at(i - 1); }

  /// Common denominator D; scaled(w) = D * q(w).
  std::int64_t denominator() const { return denominator_; }

  std::int64_t scaled(const Word& w) const {
    if (w.rank() != rank_) throw Error(ErrorKind::rank_mismatch, "word rank differs from qm rank");
    std::int64_t sum = 0;
    const auto ls = w.letters();
    std::size_t k = 0;
    while (k < ls.size()) {
      const Label i = ls[k].index;
      std::int64_t e = 0;
      for (; k < ls.size() && ls[k].index == i; ++k) e += ls[k].sign;
      if (__builtin_add_overflow(sum, tables_[i - 1].at(e), &sum)) {
        throw Error(ErrorKind::overflow, "overflow evaluating split quasimorphism");
      }
    }
    return sum;
  }

  Rational operator()(const Word& w) const { return Rational(scaled(w), denominator_); }

 private:
  std::size_t rank_ = 0;
  std::vector<AlternatingFunction> factors_;
  std::int64_t denominator_ = 1;
  std::vector<detail::ScaledTable> tables_;
};

/// Sum of factor_i(e) over the syllables x_i^e of w; 0 at the identity.
inline Rational eval_split(const SplitQM& q, const Word& w) { return q(w); }

struct SplitDefectReport {
  Rational value;
  Label label = 1;  // factor attaining the max
  DefectReport factor;
};

inline SplitDefectReport split_defect_report(const SplitQM& q) {
  SplitDefectReport best{Rational(0), 1, DefectReport{}};
  for (Label i = 1; i <= q.rank(); ++i) {
    DefectReport r = defect_z(q.factor(i));
    if (r.value > best.value) best = SplitDefectReport{r.value, i, r};
  }
  return best;
}

/// max_i defect(f_i), the defect of the split quasimorphism.
inline Rational split_defect(const SplitQM& q) { return split_defect_report(q).value; }

/// d^1 f(g, h) = f(h) - f(gh) + f(g).
template <class F>
auto coboundary1(const F& f, const Word& g, const Word& h) {
  return f(h) - f(g * h) + f(g);
}

/// d^2 c(g, h, k) = c(h, k) - c(gh, k) + c(g, hk) - c(g, h).
template <class C>
auto coboundary2(const C& c, const Word& g, const Word& h, const Word& k) {
  return c(h, k) - c(g * h, k) + c(g, h * k) - c(g, h);
}

/// Transports f along t -> m0 * t: the result is f(t) at m0 * t and zero off
/// m0 * Z.
inline AlternatingFunction embed_support(const AlternatingFunction& f, std::int64_t m0) {
  if (m0 < 1) throw Error(ErrorKind::precondition, "embedding factor must be positive");
  AlternatingFunction out;
  for (const auto& [t, v] : f.values()) out.set(detail::checked_mul_i64(m0, t), v);
  return out;
}

/// Brooks counting quasimorphism: overlapping occurrences of `pattern` in g
/// minus those of pattern^-1.
inline std::int64_t counting_qm(const Word& pattern, const Word& g) {
  if (pattern.is_identity()) throw Error(ErrorKind::precondition, "counting pattern must be nonempty");
  require_same_rank(pattern, g);
  auto count = [&](const Word& p) {
    std::int64_t c = 0;
    const auto text = g.letters();
    const auto pat = p.letters();
    if (pat.size() > text.size()) return c;
    for (std::size_t at = 0; at + pat.size() <= text.size(); ++at) {
      if (std::equal(pat.begin(), pat.end(), text.begin() + static_cast<std::ptrdiff_t>(at))) ++c;
    }
    return c;
  };
  return count(pattern) - count(invert(pattern));
}

class CountingQM {
 public:
  explicit CountingQM(Word pattern) : pattern_(std::move(pattern)) {
    if (pattern_.is_identity()) throw Error(ErrorKind::precondition, "counting pattern must be nonempty");
  }
  const Word& pattern() const { return pattern_; }
  std::int64_t operator()(const Word& g) const { return counting_qm(pattern_, g); }

 private:
  Word pattern_;
};

/// max |d^1 f(g, h)| over `pairs` pairs drawn from `next_word` (g first, then
/// h); a lower bound on the defect of f.
template <class F, class Sampler>
Rational sample_defect(const F& f, Sampler&& next_word, std::size_t pairs) {
  Rational best(0);
  for (std::size_t s = 0; s < pairs; ++s) {
    const Word g = next_word();
    const Word h = next_word();
    const Rational v = Rational(coboundary1(f, g, h));
    best = std::max(best, abs(v));
  }
  return best;
}

}  // namespace corefree

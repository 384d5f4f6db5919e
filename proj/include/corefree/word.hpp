#pragma once

// Freely reduced words in a free group F_n on generators x_1..x_n.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corefree/error.hpp"

namespace corefree {

/// Generator index, 1-based.
using Label = std::size_t;

/// A generator x_i or its inverse.
struct Letter {
  Label index = 1;
  int sign = 1;  // +1 or -1

  constexpr Letter inverse() const { return Letter{index, -sign}; }
  constexpr bool cancels(const Letter& other) const {
    return index == other.index && sign == -other.sign;
  }

  friend constexpr bool operator==(const Letter&, const Letter&) = default;
  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

constexpr Letter gen(Label i) { return Letter{i, 1}; }
constexpr Letter inv(Label i) { return Letter{i, -1}; }

/// Maximal power x_i^e inside a reduced word.
struct Syllable {
  Label index = 1;
  std::int64_t exponent = 1;

  friend constexpr bool operator==(const Syllable&, const Syllable&) = default;
};

using SyllableForm = std::vector<Syllable>;

namespace detail {

inline void check_letter(std::size_t rank, const Letter& l) {
  if (l.index < 1 || l.index > rank) {
    throw Error(ErrorKind::out_of_range,
                "generator index " + std::to_string(l.index) +
                    " outside [1, " + std::to_string(rank) + "]");
  }
  if (l.sign != 1 && l.sign != -1) {
    throw Error(ErrorKind::out_of_range, "letter sign must be +1 or -1");
  }
}

/// Appends with free cancellation against the current tail.
inline void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().cancels(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace detail

/// Element of F_n stored as its freely reduced letter sequence.
/// The empty sequence is the identity.
class Word {
 public:
  explicit Word(std::size_t rank = 2) : rank_(rank) {}

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::size_t rank, std::span<const Letter> letters) {
    Word w(rank);
    w.letters_.reserve(letters.size());
    for (const Letter& l : letters) {
      detail::check_letter(rank, l);
      detail::push_reduced(w.letters_, l);
    }
    return w;
  }

  static Word reduce(std::size_t rank, std::initializer_list<Letter> letters) {
    return reduce(rank, std::span<const Letter>(letters.begin(), letters.size()));
  }

  /// x_i^e as a word.
  static Word power(std::size_t rank, Label i, std::int64_t e) {
    Word w(rank);
    Letter l{i, e >= 0 ? 1 : -1};
    detail::check_letter(rank, l);
    w.letters_.assign(static_cast<std::size_t>(e >= 0 ? e : -e), l);
    return w;
  }

  static Word generator(std::size_t rank, Label i) { return power(rank, i, 1); }

  std::size_t rank() const { return rank_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  const Letter& operator[](std::size_t k) const { return letters_[k]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  friend Word multiply(const Word&, const Word&);
  friend Word invert(const Word&);
  friend class WordBuilder;

  std::size_t rank_;
  std::vector<Letter> letters_;
};

/// Accumulates letters with on-the-fly free cancellation.
class WordBuilder {
 public:
  explicit WordBuilder(std::size_t rank) : word_(rank) {}

  void push(const Letter& l) { detail::push_reduced(word_.letters_, l); }
  void append(const Word& w) {
    for (const Letter& l : w.letters()) push(l);
  }
  void append_inverse(const Word& w) {
    auto ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) push(it->inverse());
  }
  void push_power(Label i, std::int64_t e) {
    Letter l{i, e >= 0 ? 1 : -1};
    for (std::int64_t t = 0; t < (e >= 0 ? e : -e); ++t) push(l);
  }
  std::size_t size() const { return word_.letters_.size(); }

  Word build() && { return std::move(word_); }
  const Word& peek() const { return word_; }

 private:
  Word word_;
};

inline void require_same_rank(const Word& a, const Word& b) {
  if (a.rank() != b.rank()) {
    throw Error(ErrorKind::rank_mismatch,
                "rank mismatch: " + std::to_string(a.rank()) + " vs " +
                    std::to_string(b.rank()));
  }
}

inline Word multiply(const Word& a, const Word& b) {
  require_same_rank(a, b);
  // Cancel a's tail against b's head, then concatenate.
  std::size_t cancel = 0;
  const std::size_t na = a.size(), nb = b.size();
  while (cancel < na && cancel < nb &&
         a.letters_[na - 1 - cancel].cancels(b.letters_[cancel])) {
    ++cancel;
  }
  Word out(a.rank());
  out.letters_.reserve(na + nb - 2 * cancel);
  out.letters_.insert(out.letters_.end(), a.letters_.begin(),
                      a.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.letters_.insert(out.letters_.end(),
                      b.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                      b.letters_.end());
  return out;
}

inline Word invert(const Word& w) {
  Word out(w.rank());
  out.letters_.reserve(w.size());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

inline Word operator*(const Word& a, const Word& b) { return multiply(a, b); }

/// w^e for any integer e.
inline Word pow(const Word& w, std::int64_t e) {
  const Word base = e >= 0 ? w : invert(w);
  WordBuilder b(w.rank());
  for (std::int64_t t = 0; t < (e >= 0 ? e : -e); ++t) b.append(base);
  return std::move(b).build();
}

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
inline CyclicReduction cyclically_reduce(const Word& w) {
  auto ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  return CyclicReduction{
      Word::reduce(w.rank(), ls.subspan(lo, hi - lo)),
      Word::reduce(w.rank(), ls.first(lo)),
  };
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !w.front().cancels(w.back());
}

inline SyllableForm syllables(const Word& w) {
  SyllableForm out;
  for (const Letter& l : w.letters()) {
    if (!out.empty() && out.back().index == l.index) {
      out.back().exponent += l.sign;
    } else {
      out.push_back(Syllable{l.index, l.sign});
    }
  }
  return out;
}

/// Re-expands a syllable sequence; adjacent syllables with equal index are
/// merged by the reduction.
inline Word expand(std::size_t rank, const SyllableForm& form) {
  WordBuilder b(rank);
  for (const Syllable& s : form) {
    detail::check_letter(rank, Letter{s.index, 1});
    b.push_power(s.index, s.exponent);
  }
  return std::move(b).build();
}

/// True iff some syllable x_i^e of w has |e| >= m.
inline bool contains_power_subword(const Word& w, Label i, std::int64_t m) {
  for (const Syllable& s : syllables(w)) {
    if (s.index == i && std::llabs(s.exponent) >= m) return true;
  }
  return false;
}

/// Largest |e| over all syllables of w (0 for the identity).
inline std::int64_t max_syllable_exponent(const Word& w) {
  std::int64_t best = 0;
  for (const Syllable& s : syllables(w)) {
    best = std::max<std::int64_t>(best, std::llabs(s.exponent));
  }
  return best;
}

}  // namespace corefree

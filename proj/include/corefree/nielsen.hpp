#pragma once

// Elementary Nielsen automorphisms phi_{i,k} (x_i -> x_i, x_j -> x_j x_i^k)
// and the search for a basis no power of whose elements lies in a conjugate
// of a given infinite-index subgroup H.
//
// Each round folds the current generators, takes the core and its loop sets
// L_{x_j}, picks a label i whose loop set is a proper subset of the union L,
// and applies phi_{i,-k}, where x_i^k fixes every vertex of L_{x_i} and pushes
// every other core vertex out of the core. The union |L| strictly drops each
// round, so the loop ends with L(psi(H)) empty.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/stallings.hpp"
#include "corefree/word.hpp"

namespace corefree {

inline constexpr std::size_t kDefaultLengthCap = 1'000'000;

struct ElementaryMove {
  Label i = 1;
  std::int64_t k = 1;

  ElementaryMove inverse() const { return ElementaryMove{i, -k}; }
  friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;
};

namespace detail {

inline void check_cap(std::size_t size, std::size_t cap) {
  if (size > cap) {
    throw Error(ErrorKind::word_blowup,
                "word length " + std::to_string(size) + " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace detail

/// phi_{i,k}(w), freely reduced. Throws WordBlowup past `cap` letters.
inline Word apply_move(const Word& w, const ElementaryMove& m,
                       std::size_t cap = kDefaultLengthCap) {
  if (m.k == 0) throw Error(ErrorKind::precondition, "elementary move needs k != 0");
  detail::check_letter(w.rank(), Letter{m.i, 1});
  WordBuilder b(w.rank());
  for (const Letter& l : w.letters()) {
    if (l.index == m.i) {
      b.push(l);
    } else if (l.sign > 0) {
      b.push(l);
      b.push_power(m.i, m.k);
    } else {
      b.push_power(m.i, -m.k);
      b.push(l);
    }
    detail::check_cap(b.size(), cap);
  }
  return std::move(b).build();
}

/// Composite of elementary moves, applied left to right.
class Automorphism {
 public:
  Automorphism() = default;
  explicit Automorphism(std::vector<ElementaryMove> moves) : moves_(std::move(moves)) {
    for (const auto& m : moves_) {
      if (m.k == 0) throw Error(ErrorKind::precondition, "elementary move needs k != 0");
    }
  }

  const std::vector<ElementaryMove>& moves() const { return moves_; }
  bool is_identity() const { return moves_.empty(); }

  void then(const ElementaryMove& m) {
    if (m.k == 0) throw Error(ErrorKind::precondition, "elementary move needs k != 0");
    moves_.push_back(m);
  }

  Word apply(const Word& w, std::size_t cap = kDefaultLengthCap) const {
    Word out = w;
    for (const auto& m : moves_) out = apply_move(out, m, cap);
    return out;
  }

  Word operator()(const Word& w) const { return apply(w); }

  /// Reversed sequence with negated exponents.
  Automorphism inverse() const {
    std::vector<ElementaryMove> inv;
    inv.reserve(moves_.size());
    for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) inv.push_back(it->inverse());
    return Automorphism(std::move(inv));
  }

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  std::vector<ElementaryMove> moves_;
};

inline Word apply(const Automorphism& aut, const Word& w,
                  std::size_t cap = kDefaultLengthCap) {
  return aut.apply(w, cap);
}

inline Automorphism inverse(const Automorphism& aut) { return aut.inverse(); }

/// Label minimizing |L_{x_i}| among those with |L_{x_i}| < |L|, ties to the
/// smallest i. `sets[j]` is the loop set of label j + 1.
inline Label choose_index(const std::vector<LoopSet>& sets) {
  const std::size_t total = loop_union_size(sets);
  if (total == 0) {
    throw Error(ErrorKind::precondition, "all loop sets are empty");
  }
  Label best = 0;
  std::size_t best_size = total;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (sets[j].size() < best_size) {
      best_size = sets[j].size();
      best = j + 1;
    }
  }
  if (best == 0) {
    throw Error(ErrorKind::precondition,
                "every loop set equals the union; the subgroup has finite index");
  }
  return best;
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::overflow, "integer overflow in exponent computation");
  }
  return out;
}

}  // namespace detail

/// k = lcm(cycle lengths) * N with N minimal such that k >= |core| + 1.
/// Every exit time is at most |core|, so x_i^k fixes L_{x_i} and maps every
/// other core vertex outside the core.
inline std::int64_t compute_k(const CoreGraph& c, Label i) {
  std::uint64_t l = 1;
  for (const LabelCycle& cyc : xi_cycles(c, i)) {
    const std::uint64_t len = cyc.length();
    l = detail::checked_mul(l / std::gcd(l, len), len);
  }
  const std::uint64_t target = c.size() + 1;
  const std::uint64_t n = (target + l - 1) / l;
  const std::uint64_t k = detail::checked_mul(l, n);
  if (k > static_cast<std::uint64_t>(INT64_MAX)) {
    throw Error(ErrorKind::overflow, "exponent k too large");
  }
  return static_cast<std::int64_t>(k);
}

/// 1 + the longest directed x_i-path over all labels. Every element of the
/// subgroup then has all syllable exponents of absolute value < m0.
inline std::int64_t compute_m0(const FoldedGraph& g) {
  std::size_t longest = 0;
  for (Label i = 1; i <= g.rank(); ++i) {
    std::size_t visited = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (g.pred(i, v) != kNoVertex) continue;
      std::size_t run = 0;
      for (Vertex u = v; (u = g.succ(i, u)) != kNoVertex;) ++run;
      visited += run + 1;
      longest = std::max(longest, run);
    }
    if (visited != g.vertex_count()) {
      throw Error(ErrorKind::unbounded_run,
                  "label x" + std::to_string(i) + " has a cycle; x" +
                      std::to_string(i) + "-powers are unbounded");
    }
  }
  return static_cast<std::int64_t>(longest) + 1;
}

struct TraceEntry {
  Label i = 1;
  std::int64_t k = 1;
  std::size_t loops_before = 0;  // |L(H)| before the move
  std::size_t loops_after = 0;   // |L(phi(H))|
  std::size_t core_vertices = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct BasisCertificate {
  std::size_t rank = 2;
  std::vector<Word> original_generators;
  Automorphism psi;
  std::vector<Word> transformed_generators;  // psi(H)
  std::vector<Word> basis;                   // y_i = psi^-1(x_i)
  std::int64_t m0 = 1;
  std::vector<TraceEntry> trace;

  friend bool operator==(const BasisCertificate&, const BasisCertificate&) = default;
};

inline std::size_t total_length(const std::vector<Word>& words) {
  std::size_t n = 0;
  for (const Word& w : words) n += w.size();
  return n;
}

/// Runs the Nielsen iteration until no label has a loop in the core.
/// Throws FiniteIndex when H has finite index, WordBlowup when the total
/// generator length exceeds `cap`.
inline BasisCertificate find_power_free_basis(const SubgroupPresentation& p,
                                              std::size_t cap = kDefaultLengthCap) {
  const std::size_t n = p.rank();
  BasisCertificate cert;
  cert.rank = n;
  cert.original_generators = p.generators();

  std::vector<Word> gens = p.generators();
  FoldedGraph graph = fold(p);
  if (auto d = index(graph)) {
    throw Error(ErrorKind::finite_index,
                "subgroup has finite index " + std::to_string(*d));
  }
  CoreGraph c = core(graph);
  std::vector<LoopSet> sets = loop_sets(c);
  std::size_t loops = loop_union_size(sets);

  while (loops > 0) {
    const Label i = choose_index(sets);
    const std::int64_t k = compute_k(c, i);
    const ElementaryMove move{i, -k};
    for (Word& w : gens) w = apply_move(w, move, cap);
    detail::check_cap(total_length(gens), cap);
    cert.psi.then(move);

    TraceEntry entry{i, k, loops, 0, c.size()};
    graph = fold(SubgroupPresentation(n, gens));
    c = core(graph);
    sets = loop_sets(c);
    const std::size_t next = loop_union_size(sets);
    if (next >= loops) {
      throw Error(ErrorKind::precondition,
                  "loop count did not decrease (" + std::to_string(loops) + " -> " +
                      std::to_string(next) + ")");
    }
    entry.loops_after = next;
    cert.trace.push_back(entry);
    loops = next;
  }

  cert.transformed_generators = std::move(gens);
  cert.m0 = compute_m0(graph);
  const Automorphism back = cert.psi.inverse();
  for (Label j = 1; j <= n; ++j) {
    cert.basis.push_back(back.apply(Word::generator(n, j), cap));
  }
  return cert;
}

/// psi(h): the x-word whose letters, read as y-letters, spell h in the new
/// basis.
inline Word to_transformed_coordinates(const BasisCertificate& cert, const Word& h,
                                       std::size_t cap = kDefaultLengthCap) {
  if (h.rank() != cert.rank) {
    throw Error(ErrorKind::rank_mismatch, "word rank differs from certificate rank");
  }
  return cert.psi.apply(h, cap);
}

}  // namespace corefree

#pragma once

// Seeded random instances. Words are non-backtracking walks, so they are
// reduced by construction.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "corefree/quasimorphism.hpp"
#include "corefree/rational.hpp"
#include "corefree/stallings.hpp"
#include "corefree/word.hpp"

namespace corefree {

using Rng = std::mt19937_64;

struct InstanceSpec {
  std::size_t rank = 2;
  std::size_t generator_count = 2;
  std::size_t max_length = 6;  // each generator has length in [1, max_length]
  std::uint64_t seed = 0;
};

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline Letter random_letter(Rng& rng, std::size_t rank) {
  const std::size_t r = uniform_index(rng, 2 * rank);
  return Letter{r / 2 + 1, r % 2 == 0 ? 1 : -1};
}

/// Uniform reduced word of exactly `length` letters.
inline Word random_reduced_word(Rng& rng, std::size_t rank, std::size_t length) {
  std::vector<Letter> letters;
  letters.reserve(length);
  while (letters.size() < length) {
    Letter l = random_letter(rng, rank);
    if (!letters.empty() && letters.back().cancels(l)) continue;
    letters.push_back(l);
  }
  return Word::reduce(rank, letters);
}

/// Reduced word whose length is uniform in [0, max_length].
inline Word random_word_up_to(Rng& rng, std::size_t rank, std::size_t max_length) {
  return random_reduced_word(rng, rank, uniform_index(rng, max_length + 1));
}

inline SubgroupPresentation random_presentation(Rng& rng, const InstanceSpec& spec) {
  std::vector<Word> gens;
  for (std::size_t g = 0; g < spec.generator_count; ++g) {
    gens.push_back(random_reduced_word(rng, spec.rank, 1 + uniform_index(rng, spec.max_length)));
  }
  return SubgroupPresentation(spec.rank, std::move(gens));
}

inline SubgroupPresentation random_presentation(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  return random_presentation(rng, spec);
}

/// Product of between 1 and `max_factors` generators or inverses, never
/// placing a generator next to its own inverse. Identity for no generators.
inline Word random_subgroup_element(Rng& rng, std::size_t rank,
                                    const std::vector<Word>& gens,
                                    std::size_t max_factors) {
  WordBuilder b(rank);
  if (gens.empty() || max_factors == 0) return std::move(b).build();
  const std::size_t count = 1 + uniform_index(rng, max_factors);
  std::size_t prev = 0;
  int prev_sign = 0;
  for (std::size_t f = 0; f < count; ++f) {
    std::size_t g = 0;
    int sign = 1;
    do {
      g = uniform_index(rng, gens.size());
      sign = uniform_index(rng, 2) == 0 ? 1 : -1;
    } while (prev_sign != 0 && g == prev && sign == -prev_sign);
    if (sign > 0) {
      b.append(gens[g]);
    } else {
      b.append_inverse(gens[g]);
    }
    prev = g;
    prev_sign = sign;
  }
  return std::move(b).build();
}

/// Random alternating function with support in [1, max_support]: each key is
/// present with probability 1/2, with value p/q, |p| <= max_numerator,
/// 1 <= q <= max_denominator.
inline AlternatingFunction random_function(Rng& rng, std::int64_t max_support,
                                           std::int64_t max_numerator = 6,
                                           std::int64_t max_denominator = 4) {
  AlternatingFunction f;
  for (std::int64_t m = 1; m <= max_support; ++m) {
    if (uniform_index(rng, 2) == 0) continue;
    const auto p = std::uniform_int_distribution<std::int64_t>(-max_numerator, max_numerator)(rng);
    const auto q = std::uniform_int_distribution<std::int64_t>(1, max_denominator)(rng);
    f.set(m, Rational(p, q));
  }
  return f;
}

/// Calls fn(w) for every reduced word of length <= max_length, depth-first
/// over the letter order x1, x1^-1, x2, x2^-1, ...
template <class Fn>
void for_each_reduced_word(std::size_t rank, std::size_t max_length, Fn&& fn) {
  std::vector<Letter> current;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    fn(Word::reduce(rank, current));
    if (remaining == 0) return;
    for (Label i = 1; i <= rank; ++i) {
      for (int s : {1, -1}) {
        const Letter l{i, s};
        if (!current.empty() && current.back().cancels(l)) continue;
        current.push_back(l);
        self(self, remaining - 1);
        current.pop_back();
      }
    }
  };
  rec(rec, max_length);
}

/// All reduced words of length <= max_length.
inline std::vector<Word> all_reduced_words(std::size_t rank, std::size_t max_length) {
  std::vector<Word> out;
  for_each_reduced_word(rank, max_length, [&](const Word& w) { out.push_back(w); });
  return out;
}

}  // namespace corefree

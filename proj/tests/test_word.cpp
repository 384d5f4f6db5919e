#include <gtest/gtest.h>

#include "corefree/corefree.hpp"
#include "oracles.hpp"

using namespace corefree;

namespace {

constexpr std::size_t kIterations = 2000;

Word w2(std::string_view text) { return parse_word(text, 2); }

/// Unreduced letter sequences, so reduction has work to do.
std::vector<Letter> random_letters(Rng& rng, std::size_t rank, std::size_t max_len) {
  std::vector<Letter> out(uniform_index(rng, max_len + 1));
  for (auto& l : out) l = random_letter(rng, rank);
  return out;
}

}  // namespace

TEST(Reduce, CancelsAdjacentPairs) {
  EXPECT_TRUE(Word::reduce(2, {gen(1), inv(1)}).is_identity());
  EXPECT_EQ(Word::reduce(2, {gen(1), gen(2), inv(2), gen(1)}), Word::power(2, 1, 2));
}

TEST(Reduce, AgreesWithNaiveReduction) {
  Rng rng(11);
  for (std::size_t it = 0; it < kIterations; ++it) {
    const auto ls = random_letters(rng, 3, 24);
    oracle::Raw raw;
    for (const auto& l : ls) raw.push_back(l.sign * static_cast<int>(l.index));
    EXPECT_EQ(oracle::to_raw(Word::reduce(3, ls)), oracle::naive_reduce(raw));
  }
}

TEST(Reduce, Idempotent) {
  Rng rng(12);
  for (std::size_t it = 0; it < kIterations; ++it) {
    const Word w = Word::reduce(2, random_letters(rng, 2, 20));
    EXPECT_EQ(Word::reduce(2, w.letters()), w);
  }
}

TEST(Reduce, RejectsBadLetters) {
  EXPECT_THROW(Word::reduce(2, {gen(3)}), Error);
  EXPECT_THROW(Word::reduce(2, {Letter{0, 1}}), Error);
  EXPECT_THROW(Word::reduce(2, {Letter{1, 2}}), Error);
}

TEST(Multiply, Examples) {
  EXPECT_EQ(w2("x1 x2") * w2("x2^-1 x1"), w2("x1^2"));
  EXPECT_EQ(w2("x1 x2") * w2("x2^-2"), w2("x1 x2^-1"));
  const Word w = w2("x2 x1^-3");
  EXPECT_EQ(w * Word(2), w);
  EXPECT_EQ(Word(2) * w, w);
}

TEST(Multiply, RankMismatchThrows) {
  try {
    (void)(Word(2) * Word(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::rank_mismatch);
  }
}

TEST(Multiply, AssociativeWithTwoSidedInverses) {
  Rng rng(13);
  for (std::size_t it = 0; it < kIterations; ++it) {
    const Word a = random_word_up_to(rng, 3, 12);
    const Word b = random_word_up_to(rng, 3, 12);
    const Word c = random_word_up_to(rng, 3, 12);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * invert(a)).is_identity());
    EXPECT_TRUE((invert(a) * a).is_identity());
    EXPECT_EQ(oracle::to_raw(a * b),
              oracle::naive_reduce(oracle::concat(oracle::to_raw(a), oracle::to_raw(b))));
  }
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(w2("x1 x2^-1")), w2("x2 x1^-1"));
  EXPECT_TRUE(invert(Word(2)).is_identity());
  Rng rng(14);
  for (std::size_t it = 0; it < 200; ++it) {
    const Word w = random_word_up_to(rng, 2, 15);
    EXPECT_EQ(invert(invert(w)), w);
  }
}

TEST(Pow, MatchesRepeatedProduct) {
  Rng rng(15);
  for (std::size_t it = 0; it < 200; ++it) {
    const Word w = random_word_up_to(rng, 2, 6);
    Word acc(2);
    for (std::int64_t e = 0; e <= 5; ++e) {
      EXPECT_EQ(pow(w, e), acc);
      EXPECT_EQ(pow(w, -e), invert(acc));
      acc = acc * w;
    }
  }
}

TEST(CyclicReduce, Examples) {
  auto r = cyclically_reduce(w2("x1 x2 x1^-1"));
  EXPECT_EQ(r.core, w2("x2"));
  EXPECT_EQ(r.conjugator, w2("x1"));

  r = cyclically_reduce(w2("x1 x2"));
  EXPECT_EQ(r.core, w2("x1 x2"));
  EXPECT_TRUE(r.conjugator.is_identity());

  r = cyclically_reduce(w2("x2^-1 x1 x2 x1 x2"));
  EXPECT_EQ(r.core, w2("x1 x2 x1"));
  EXPECT_EQ(r.conjugator, w2("x2^-1"));
  EXPECT_EQ(r.conjugator * r.core * invert(r.conjugator), w2("x2^-1 x1 x2 x1 x2"));
}

TEST(CyclicReduce, ReassemblesAndIsCyclicallyReduced) {
  Rng rng(16);
  for (std::size_t it = 0; it < kIterations; ++it) {
    const Word c = random_word_up_to(rng, 2, 8);
    const Word g = random_word_up_to(rng, 2, 8);
    const Word w = g * c * invert(g);
    const auto r = cyclically_reduce(w);
    EXPECT_EQ(r.conjugator * r.core * invert(r.conjugator), w);
    EXPECT_TRUE(is_cyclically_reduced(r.core));
    EXPECT_LE(r.core.size(), c.size());
  }
}

TEST(Syllables, Examples) {
  EXPECT_EQ(syllables(w2("x1 x1 x2^-1 x1")), (SyllableForm{{1, 2}, {2, -1}, {1, 1}}));
  EXPECT_TRUE(syllables(Word(2)).empty());
  EXPECT_EQ(syllables(w2("x1^3")), (SyllableForm{{1, 3}}));
}

TEST(Syllables, RoundTrip) {
  Rng rng(17);
  for (std::size_t it = 0; it < kIterations; ++it) {
    const Word w = random_word_up_to(rng, 3, 20);
    const SyllableForm s = syllables(w);
    EXPECT_EQ(expand(3, s), w);
    for (std::size_t k = 0; k + 1 < s.size(); ++k) EXPECT_NE(s[k].index, s[k + 1].index);
  }
}

TEST(PowerSubword, Examples) {
  const Word w = w2("x1 x2 x1^2 x2");
  EXPECT_TRUE(contains_power_subword(w, 1, 2));
  EXPECT_FALSE(contains_power_subword(w, 1, 3));
  EXPECT_TRUE(contains_power_subword(w2("x2^-3"), 2, 3));
  EXPECT_EQ(max_syllable_exponent(w), 2);
  EXPECT_EQ(max_syllable_exponent(Word(2)), 0);
}

TEST(Parse, Examples) {
  EXPECT_EQ(w2("x1 x2^-1 x1^3"), Word::reduce(2, {gen(1), inv(2), gen(1), gen(1), gen(1)}));
  EXPECT_EQ(w2("aB"), w2("x1 x2^-1"));
  EXPECT_TRUE(w2("x1 x1^-1").is_identity());
  EXPECT_EQ(w2("x1.x2"), w2("x1x2"));
  EXPECT_EQ(w2("x2^+2"), w2("x2 x2"));
  EXPECT_TRUE(w2("").is_identity());
  EXPECT_TRUE(w2("x1^0").is_identity());
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    (void)w2("x1 x2^-");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_EQ(e.position(), 7u);
  }
  try {
    (void)w2("x1 ?");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  try {
    (void)w2("x1 x3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::out_of_range);
  }
  EXPECT_THROW((void)w2("x0"), ParseError);
  EXPECT_THROW((void)parse_word("a", 27), ParseError);
  EXPECT_NO_THROW((void)parse_word("x27", 27));
}

TEST(Parse, FormatRoundTrip) {
  Rng rng(18);
  for (std::size_t it = 0; it < 10000; ++it) {
    const std::size_t rank = 2 + uniform_index(rng, 3);
    const Word w = random_word_up_to(rng, rank, 20);
    EXPECT_EQ(parse_word(format_word(w), rank), w);
    EXPECT_EQ(parse_word(format_shorthand(w), rank), w);
  }
}

TEST(Format, Canonical) {
  EXPECT_EQ(format_word(w2("x1 x2^-1 x1 x1 x1")), "x1 x2^-1 x1^3");
  EXPECT_EQ(format_word(Word(2)), "");
  EXPECT_EQ(format_shorthand(w2("x1 x2^-1")), "aB");
}

TEST(ParseList, SplitsOnCommas) {
  const auto ws = parse_word_list("x1, x2^2, x2 x1 x2^-1", 2);
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[2], w2("x2 x1 x2^-1"));
  EXPECT_TRUE(parse_word_list("  ", 2).empty());
  try {
    (void)parse_word_list("x1, x2 ?", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_EQ(max_index_in("x1, x4^2"), 4u);
  EXPECT_EQ(max_index_in(""), 0u);
}

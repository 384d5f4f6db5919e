#pragma once

// Text grammar for words:
//   word  := empty | token (sep token)*     sep := whitespace or '.'
//   token := 'x' INT ('^' SIGNEDINT)?
// plus letter shorthand a-z (x_1..x_26) and A-Z (their inverses), accepted
// only when the ambient rank is at most 26. Adjacent tokens need no
// separator ("x1x2" is x1 x2).

#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/word.hpp"

namespace corefree {

inline constexpr std::int64_t kMaxParsedExponent = 1'000'000;

namespace detail {

struct RawLetters {
  std::vector<Letter> letters;
  std::vector<std::size_t> positions;  // source offset of each letter's token
};

inline bool is_sep(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '.';
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline std::int64_t read_uint(std::string_view text, std::size_t& pos,
                              std::int64_t limit, std::string_view what) {
  const std::size_t start = pos;
  if (pos >= text.size() || !is_digit(text[pos])) {
    throw ParseError(pos, "expected " + std::string(what));
  }
  std::int64_t value = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    value = value * 10 + (text[pos] - '0');
    if (value > limit) throw ParseError(start, std::string(what) + " too large");
    ++pos;
  }
  return value;
}

/// Tokenizes without reducing. Shorthand letters are accepted iff
/// `allow_shorthand`.
inline RawLetters tokenize(std::string_view text, bool allow_shorthand) {
  RawLetters out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (is_sep(c)) {
      ++pos;
      continue;
    }
    const std::size_t token_start = pos;
    if (c == 'x' && pos + 1 < text.size() && is_digit(text[pos + 1])) {
      ++pos;
      const auto index = read_uint(text, pos, std::numeric_limits<std::int32_t>::max(),
                                   "generator index");
      if (index == 0) throw ParseError(token_start + 1, "generator index must be >= 1");
      std::int64_t exponent = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        int sign = 1;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
          sign = text[pos] == '-' ? -1 : 1;
          ++pos;
        }
        exponent = sign * read_uint(text, pos, kMaxParsedExponent, "exponent");
      }
      const Letter l{static_cast<Label>(index), exponent >= 0 ? 1 : -1};
      for (std::int64_t t = 0; t < (exponent >= 0 ? exponent : -exponent); ++t) {
        out.letters.push_back(l);
        out.positions.push_back(token_start);
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      if (!allow_shorthand) {
        throw ParseError(pos, "letter shorthand requires rank <= 26");
      }
      const bool lower = std::islower(static_cast<unsigned char>(c)) != 0;
      const Label index = static_cast<Label>(
          (lower ? c - 'a' : c - 'A') + 1);
      out.letters.push_back(Letter{index, lower ? 1 : -1});
      out.positions.push_back(pos);
      ++pos;
      continue;
    }
    throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
  return out;
}

inline void check_indices(const RawLetters& raw, std::size_t rank,
                          std::size_t offset = 0) {
  for (std::size_t k = 0; k < raw.letters.size(); ++k) {
    if (raw.letters[k].index > rank) {
      throw Error(ErrorKind::out_of_range,
                  "generator index " + std::to_string(raw.letters[k].index) +
                      " exceeds rank " + std::to_string(rank) + " at position " +
                      std::to_string(raw.positions[k] + offset));
    }
  }
}

}  // namespace detail

/// Parses a word in F_rank; the result is freely reduced.
inline Word parse_word(std::string_view text, std::size_t rank) {
  auto raw = detail::tokenize(text, rank <= 26);
  detail::check_indices(raw, rank);
  return Word::reduce(rank, raw.letters);
}

/// Largest generator index mentioned in `text`, a word or a comma-separated
/// list (0 if none). Used to infer the ambient rank.
inline std::size_t max_index_in(std::string_view text) {
  std::size_t best = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    try {
      for (const Letter& l : detail::tokenize(text.substr(start, comma - start), true).letters) {
        best = std::max(best, l.index);
      }
    } catch (const ParseError& e) {
      throw ParseError(e.position() + start,
                       std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    start = comma + 1;
  }
  return best;
}

/// Canonical x-notation, e.g. "x1 x2^-1 x1^3". The identity formats as "".
inline std::string format_word(const Word& w) {
  std::string out;
  for (const Syllable& s : syllables(w)) {
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(s.index);
    if (s.exponent != 1) {
      out += '^';
      out += std::to_string(s.exponent);
    }
  }
  return out;
}

/// Letter shorthand ("aB"); only meaningful for rank <= 26.
inline std::string format_shorthand(const Word& w) {
  if (w.rank() > 26) {
    throw Error(ErrorKind::out_of_range, "shorthand needs rank <= 26");
  }
  std::string out;
  for (const Letter& l : w.letters()) {
    const char base = l.sign > 0 ? 'a' : 'A';
    out += static_cast<char>(base + static_cast<char>(l.index - 1));
  }
  return out;
}

/// Comma-separated generator list, e.g. "x1, x2^2, x2 x1 x2^-1".
/// Empty text is the empty list; blank entries denote the identity.
inline std::vector<Word> parse_word_list(std::string_view text, std::size_t rank) {
  std::vector<Word> out;
  bool blank = true;
  for (char c : text) {
    if (!detail::is_sep(c)) blank = false;
  }
  if (blank) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                            : comma - start);
    try {
      auto raw = detail::tokenize(piece, rank <= 26);
      detail::check_indices(raw, rank, start);
      out.push_back(Word::reduce(rank, raw.letters));
    } catch (const ParseError& e) {
      throw ParseError(e.position() + start,
                       std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace corefree

#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "corefree/error.hpp"

namespace corefree {

using Rational = boost::rational<std::int64_t>;

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  auto read = [&](std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
      throw Error(ErrorKind::malformed_input, "bad rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(read(text));
  const std::int64_t den = read(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::malformed_input, "zero denominator in '" + std::string(text) + "'");
  return Rational(read(text.substr(0, slash)), den);
}

namespace detail {

inline std::int64_t checked_mul_i64(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::overflow, "integer overflow in exact arithmetic");
  }
  return out;
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  return checked_mul_i64(a / std::gcd(a, b), b);
}

}  // namespace detail

}  // namespace corefree

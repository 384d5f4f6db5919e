#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace corefree {

enum class ErrorKind {
  parse,
  out_of_range,
  rank_mismatch,
  finite_index,
  word_blowup,
  unbounded_run,
  precondition,
  malformed_input,
  overflow,
};

/// Machine-readable name, as reported in CLI error objects.
constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::out_of_range: return "IndexOutOfRange";
    case ErrorKind::rank_mismatch: return "RankMismatch";
    case ErrorKind::finite_index: return "FiniteIndex";
    case ErrorKind::word_blowup: return "WordBlowup";
    case ErrorKind::unbounded_run: return "UnboundedRun";
    case ErrorKind::precondition: return "PreconditionViolation";
    case ErrorKind::malformed_input: return "MalformedInput";
    case ErrorKind::overflow: return "ArithmeticOverflow";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in word or generator-list text; `position` is a 0-based
/// character offset into the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::parse,
              "parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace corefree

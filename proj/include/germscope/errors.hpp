#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace germscope {

/// Base class for every error raised by the library.
class GermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed `.germ` input; carries a 1-based line/column position.
class ParseError : public GermError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : GermError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The germ (or an ideal derived from it) has infinite colength.
class NonFiniteGerm : public GermError {
 public:
  using GermError::GermError;
};

/// A jet-truncated result could not be certified at the requested budget.
class CertificationError : public GermError {
 public:
  using GermError::GermError;
};

/// An internal cross-check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace germscope

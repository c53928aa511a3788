#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morph {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alphabet sizes of two objects that must be combined do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller passed an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Probability table violates nonnegativity or normalization.
class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

/// D(p||q) with p[i] > 0 and q[i] = 0.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A measure normalized by ln|alphabet| on a one-symbol alphabet.
class DegenerateAlphabetError : public Error {
 public:
  using Error::Error;
};

/// Estimated distributions lack support where a formula divides by it.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Two formulations of the same quantity disagree, or a value left its range.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state during integration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Bad input data (NaN samples, out-of-range symbols).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace morph

#ifndef TRANSDUCERS_ERRORS_HPP_
#define TRANSDUCERS_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace transducers {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ForeignSymbol : public Error {
 public:
  explicit ForeignSymbol(const std::string& symbol)
      : Error("symbol '" + symbol + "' is not in the alphabet"), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class RunExplosion : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotFunctionalInput : public Error {
 public:
  using Error::Error;
};

class AmbiguousInput : public Error {
 public:
  using Error::Error;
};

class UndefinedStep : public Error {
 public:
  using Error::Error;
};

class HeadOutOfTape : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class AmbiguousK : public Error {
 public:
  using Error::Error;
};

class InexactDomain : public Error {
 public:
  using Error::Error;
};

/// Malformed machine or expression file.
class FormatError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& expected)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected),
        line_(line),
        col_(col),
        expected_(expected) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string expected_;
};

}  // namespace transducers

#endif  // TRANSDUCERS_ERRORS_HPP_

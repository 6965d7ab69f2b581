#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stratkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class NameError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A rule fired but left right-hand-side or condition variables unbound.
class ApplicationError : public Error {
 public:
  using Error::Error;
};

/// Number of strategies controlling rewrite conditions differs from the rule.
class ArityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedACUnification : public Error {
 public:
  using Error::Error;
};

class UnsupportedACOrder : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

/// Common base for resource-limit failures, distinct from logical failure.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NonTerminationSuspected : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class DepthExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class StateBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class InferenceBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

}  // namespace stratkit

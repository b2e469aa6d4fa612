// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  enum class Kind { UnknownSymbol, ArityMismatch, UnboundVariable, NotClosed, Duplicate };

  ValidationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Raised when an enumeration would exceed its configured candidate budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Evaluation-time failures: unassigned variables, arity beyond a Henkin bound.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Malformed structure/fragment/context files and bad literals.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace solab

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mz {

enum class ErrorKind {
  // input errors
  NotPrime,
  FieldMismatch,
  DivisionByZero,
  InhomogeneousProjective,
  UnknownVariable,
  BadReduction,
  SmallCharacteristic,
  NotTorsor,
  InsufficientTerms,
  ZeroConstantTerm,
  BaseMismatch,
  NotInvertible,
  BadLeadingCoefficient,
  AdditiveReduction,
  PoleHit,
  MissingPlaces,
  SyntaxError,
  UnboundIdentifier,
  InvalidInput,
  // mathematical failures
  NoFit,
  NotSolvable,
  NotWeil,
  NotMonomialRatio,
  // resource caps
  TooLarge,
};

std::string_view kind_name(ErrorKind kind) noexcept;

/// Process exit code for an error class: 2 input, 3 mathematical failure, 4 resource cap.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse errors additionally carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(ErrorKind::SyntaxError, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace mz

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isored {

enum class ErrorCode {
  NotSquare,
  NegativeEntry,
  NonFiniteEntry,
  ColumnSumViolation,
  ZeroColumn,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidProbabilityVector,
  EigensolverFailure,
  SingularElimination,
  AbsorbingPivot,
  NoViablePivot,
  DivisionByZeroFunction,
  NotStructural,
  PoleAtLambda,
  DegenerateDeterminant,
  SingularSystem,
  NoConvergence,
  PreconditionViolation,
  EmptyInput,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. Indices carried here are 1-based, matching every
/// external interface; zero means "not applicable".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::size_t first = 0,
        std::size_t second = 0, double value = 0.0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t first_index() const noexcept { return first_; }
  std::size_t second_index() const noexcept { return second_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::size_t first_;
  std::size_t second_;
  double value_;
};

}  // namespace isored

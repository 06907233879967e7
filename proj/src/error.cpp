#include "isored/error.hpp"

namespace isored {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::ColumnSumViolation: return "ColumnSumViolation";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidProbabilityVector: return "InvalidProbabilityVector";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::SingularElimination: return "SingularElimination";
    case ErrorCode::AbsorbingPivot: return "AbsorbingPivot";
    case ErrorCode::NoViablePivot: return "NoViablePivot";
    case ErrorCode::DivisionByZeroFunction: return "DivisionByZeroFunction";
    case ErrorCode::NotStructural: return "NotStructural";
    case ErrorCode::PoleAtLambda: return "PoleAtLambda";
    case ErrorCode::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail, std::size_t first,
             std::size_t second, double value)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      first_(first),
      second_(second),
      value_(value) {}

}  // namespace isored

#include "error.hpp"

namespace crawlfv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::InvertedRadii: return "InvertedRadii";
    case ErrorCode::TooFewCells: return "TooFewCells";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveRadius:
    case ErrorCode::InvertedRadii:
    case ErrorCode::TooFewCells:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingFile:
    case ErrorCode::UnknownKey:
    case ErrorCode::BadValue:
    case ErrorCode::GridTooLarge:
    case ErrorCode::OutOfDomain:
      return true;
    default:
      return false;
  }
}

bool is_solver_error(ErrorCode code) noexcept {
  return code == ErrorCode::SolverDiverged || code == ErrorCode::SingularMatrix ||
         code == ErrorCode::NonFiniteState;
}

}  // namespace crawlfv

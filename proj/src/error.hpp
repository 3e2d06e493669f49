#pragma once

#include <stdexcept>
#include <string>

namespace crawlfv {

enum class ErrorCode {
  NonPositiveRadius,
  InvertedRadii,
  TooFewCells,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidArgument,
  SolverDiverged,
  SingularMatrix,
  NonFiniteState,
  MissingFile,
  UnknownKey,
  BadValue,
  IoError,
  GridTooLarge,
  OutOfDomain,
};

const char* to_string(ErrorCode code) noexcept;

/// Validation errors are those caused by bad user input (config, grid,
/// dimensions); the CLI maps them to a distinct exit code.
bool is_validation_error(ErrorCode code) noexcept;
bool is_solver_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crawlfv

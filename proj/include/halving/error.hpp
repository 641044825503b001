#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace halving {

enum class ErrorKind {
  InvalidArmCount,
  BudgetTooSmall,
  IndexOutOfRange,
  MatrixExhausted,
  EmptyCandidateSet,
  ScheduleExhausted,
  InsufficientBatches,
  AlphaOutOfRange,
  InvalidRange,
  DegenerateFit,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every recoverable failure in the library is reported as an Error carrying
// its kind, so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace halving

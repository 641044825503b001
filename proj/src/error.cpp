#include "halving/error.hpp"

namespace halving {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArmCount: return "InvalidArmCount";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MatrixExhausted: return "MatrixExhausted";
    case ErrorKind::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorKind::ScheduleExhausted: return "ScheduleExhausted";
    case ErrorKind::InsufficientBatches: return "InsufficientBatches";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace halving

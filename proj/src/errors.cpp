#include "superosc/errors.hpp"

namespace superosc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateTimes: return "DuplicateTimes";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::EmptyGridAfterZeroGuard: return "EmptyGridAfterZeroGuard";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  return 10 + static_cast<int>(kind);
}

}  // namespace superosc

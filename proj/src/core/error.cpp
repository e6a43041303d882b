#include "navsim/core/error.hpp"

namespace nav {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularObservation: return "SingularObservation";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DegenerateBelief: return "DegenerateBelief";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::LocalMinimum: return "LocalMinimum";
    case ErrorCode::SingularGeometry: return "SingularGeometry";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
  }
  return "Unknown";
}

}  // namespace nav

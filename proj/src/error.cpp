#include "simcheck/error.hpp"

namespace simcheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::CycleLimitExceeded: return "CycleLimitExceeded";
    case ErrorCode::MarginalMismatch: return "MarginalMismatch";
    case ErrorCode::NotAGInverse: return "NotAGInverse";
    case ErrorCode::InvalidCost: return "InvalidCost";
    case ErrorCode::NotSimulatable: return "NotSimulatable";
    case ErrorCode::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace simcheck

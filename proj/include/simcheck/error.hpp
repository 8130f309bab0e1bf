#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simcheck {

enum class ErrorCode {
  NegativeMass,
  NotNormalized,
  EmptyAlphabet,
  DimensionMismatch,
  NonFinite,
  ConvergenceFailure,
  CycleLimitExceeded,
  MarginalMismatch,
  NotAGInverse,
  InvalidCost,
  NotSimulatable,
  AlphabetTooLarge,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace simcheck

#pragma once

#include <stdexcept>
#include <string>

namespace xcorr {

enum class ErrorCode {
  InvalidArgument = 1,
  NonPositiveTemperature,
  RangeUnsupported,
  InvalidState,
  NotHermitian,
  DegenerateOutcome,
  NearTransition,
  NoBracket,
  PairNotBorn,
  NoTransitionFound,
  InsufficientPoints,
  IllConditionedFit,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a stable error code; the C API maps it onto xcorr_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xcorr

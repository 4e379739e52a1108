#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudospline {

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  kDomain,             ///< argument outside the mathematical domain
  kPole,               ///< argument at a pole of Gamma
  kResolution,         ///< grid too coarse / window not covered
  kTolerance,          ///< requested accuracy not attainable
  kConsistency,        ///< an identity that must hold numerically does not
  kConditionViolated,  ///< operation requires a condition that is false for this order
  kLength,             ///< signal or subband length mismatch
  kWindow,             ///< evaluation point outside a profile window
  kGridIncompatible,   ///< sampling grids do not line up
  kInsufficientRange,  ///< not enough data in a fit range
  kParse,              ///< malformed input data
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pseudospline

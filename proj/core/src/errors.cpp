#include "pseudospline/errors.hpp"

namespace pseudospline {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPole: return "pole";
    case ErrorKind::kResolution: return "resolution";
    case ErrorKind::kTolerance: return "tolerance";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kConditionViolated: return "condition-violated";
    case ErrorKind::kLength: return "length";
    case ErrorKind::kWindow: return "window";
    case ErrorKind::kGridIncompatible: return "grid-incompatible";
    case ErrorKind::kInsufficientRange: return "insufficient-range";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace pseudospline

#include "parity_sieve/error.hpp"

namespace parity_sieve {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kBounds: return "bounds";
    case ErrorCode::kEmptyRange: return "empty-range";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kArithmetic: return "arithmetic";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kCase: return "case";
    case ErrorCode::kGridAlignment: return "grid-alignment";
    case ErrorCode::kDegenerateRange: return "degenerate-range";
    case ErrorCode::kAmbiguous: return "ambiguous";
    case ErrorCode::kProximity: return "proximity";
  }
  return "unknown";
}

}  // namespace parity_sieve

#pragma once

#include <stdexcept>
#include <string>

namespace parity_sieve {

enum class ErrorCode {
  kBounds,       // argument outside the supported range
  kEmptyRange,   // hi <= lo
  kResource,     // memory budget exceeded
  kArithmetic,   // exact accumulator overflow
  kRange,        // evaluation point outside a computed table
  kDomain,       // mathematical domain violation (e.g. Re s <= 1)
  kCase,         // Case 1 / Case 2 mismatch
  kGridAlignment,
  kDegenerateRange,
  kAmbiguous,    // integer alpha requested without a side
  kProximity,    // too close to a jump point
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace parity_sieve

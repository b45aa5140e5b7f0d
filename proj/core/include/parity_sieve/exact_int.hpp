#pragma once

#include <cstdint>
#include <string>

#include "parity_sieve/error.hpp"

namespace parity_sieve {

// Signed 128-bit integer whose arithmetic aborts on overflow instead of
// wrapping. Used for every exact sum in the library.
class ExactInt {
 public:
  using Rep = __int128;

  constexpr ExactInt() = default;
  constexpr ExactInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by intent
  static constexpr ExactInt from_raw(Rep v) {
    ExactInt r;
    r.v_ = v;
    return r;
  }

  constexpr Rep raw() const { return v_; }

  ExactInt& operator+=(ExactInt o) {
    if (__builtin_add_overflow(v_, o.v_, &v_))
      fail(ErrorCode::kArithmetic, "exact accumulator overflow in addition");
    return *this;
  }
  ExactInt& operator-=(ExactInt o) {
    if (__builtin_sub_overflow(v_, o.v_, &v_))
      fail(ErrorCode::kArithmetic, "exact accumulator overflow in subtraction");
    return *this;
  }
  ExactInt& operator*=(ExactInt o) {
    if (__builtin_mul_overflow(v_, o.v_, &v_))
      fail(ErrorCode::kArithmetic, "exact accumulator overflow in multiplication");
    return *this;
  }

  friend ExactInt operator+(ExactInt a, ExactInt b) { return a += b; }
  friend ExactInt operator-(ExactInt a, ExactInt b) { return a -= b; }
  friend ExactInt operator*(ExactInt a, ExactInt b) { return a *= b; }
  ExactInt operator-() const { return ExactInt{} - *this; }

  friend constexpr bool operator==(ExactInt a, ExactInt b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExactInt a, ExactInt b) { return a.v_ <=> b.v_; }

  bool fits_int64() const {
    return v_ >= INT64_MIN && v_ <= INT64_MAX;
  }
  std::int64_t to_int64() const;
  double to_double() const { return static_cast<double>(v_); }
  long double to_long_double() const { return static_cast<long double>(v_); }

  // Decimal representation; exact sums are serialized as strings.
  std::string to_string() const;
  static ExactInt parse(const std::string& text);

 private:
  Rep v_ = 0;
};

// base^exponent with overflow detection.
ExactInt checked_pow(std::int64_t base, unsigned exponent);

}  // namespace parity_sieve

#include "parity_sieve/exact_int.hpp"

#include <algorithm>

namespace parity_sieve {

std::int64_t ExactInt::to_int64() const {
  if (!fits_int64()) fail(ErrorCode::kArithmetic, "value does not fit in 64 bits");
  return static_cast<std::int64_t>(v_);
}

std::string ExactInt::to_string() const {
  if (v_ == 0) return "0";
  // Work with the negative magnitude so INT128_MIN is representable.
  Rep n = v_ < 0 ? v_ : -v_;
  std::string digits;
  while (n != 0) {
    const int d = -static_cast<int>(n % 10);
    digits.push_back(static_cast<char>('0' + d));
    n /= 10;
  }
  if (v_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

ExactInt ExactInt::parse(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) fail(ErrorCode::kBounds, "empty integer literal");
  ExactInt acc;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') fail(ErrorCode::kBounds, "invalid integer literal: " + text);
    acc *= 10;
    acc -= (c - '0');  // accumulate negatively
  }
  return negative ? acc : -acc;
}

ExactInt checked_pow(std::int64_t base, unsigned exponent) {
  ExactInt result = 1;
  for (unsigned e = 0; e < exponent; ++e) result *= base;
  return result;
}

}  // namespace parity_sieve

#pragma once

#include <cmath>
#include <complex>

namespace parity_sieve {

// Neumaier's variant of Kahan summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T term) {
    const T t = sum_ + term;
    if (magnitude(sum_) >= magnitude(term))
      carry_ += (sum_ - t) + term;
    else
      carry_ += (term - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.carry_);
  }
  T value() const { return sum_ + carry_; }

 private:
  static double magnitude(double v) { return std::fabs(v); }
  static long double magnitude(long double v) { return std::fabs(v); }
  static double magnitude(const std::complex<double>& v) {
    return std::fabs(v.real()) + std::fabs(v.imag());
  }

  T sum_{};
  T carry_{};
};

}  // namespace parity_sieve

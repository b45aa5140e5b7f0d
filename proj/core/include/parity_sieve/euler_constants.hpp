#pragma once

#include <complex>
#include <cstdint>
#include <memory>

#include "parity_sieve/prime_engine.hpp"

namespace parity_sieve {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr std::uint64_t kDefaultCutoff = 10'000'000;

// A truncated Euler product over p <= cutoff.
//
// `value` is the literal finite product. `corrected` additionally carries
// the prime-number-theorem estimate of the tail, sum_{p > cutoff} log F(p)
// ~ int_cutoff^inf log F(t) dt / log t. `tail_bound` bounds
// |log(true / value)| using sum_{p > P} 1/p^2 <= 1/(P - 1); it is infinite
// while the factors are outside their asymptotic regime, and then
// corrected == value.
struct EulerProduct {
  std::complex<double> value;
  std::complex<double> corrected;
  std::complex<double> tail_estimate;  // log(corrected / value)
  std::uint64_t cutoff = 0;
  double tail_bound = 0;
  std::size_t factor_count = 0;

  double real() const { return value.real(); }
  double corrected_real() const { return corrected.real(); }
};

// Shared prime table covering at least `limit`.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

// Case 1: k + 1 composite; Case 2: k + 1 prime.
bool is_case_two(unsigned k);
bool is_prime(std::uint64_t n);

// G_k(s) = prod_p (1 - k / (p^s - 1)), Re s > 1.
EulerProduct G_eval(std::complex<double> s, unsigned k, std::uint64_t cutoff = kDefaultCutoff);

// b_k = k! prod_p p^k (p-k-1) / (p-1)^{k+1}; Case 1 only.
EulerProduct b_constant(unsigned k, std::uint64_t cutoff = kDefaultCutoff);

// c_k = (k+1)! (1+1/k)^{k+1} log(k+1) prod_{p != k+1} p^k (p-k-1) / (p-1)^{k+1}; Case 2 only.
EulerProduct c_constant(unsigned k, std::uint64_t cutoff = kDefaultCutoff);

// l(-k) = e^{-(k+1) gamma} prod_p (1 - (k+1)/p)(1 - 1/p)^{-(k+1)}; exactly 0 in Case 2.
EulerProduct limit_constant(unsigned k, std::uint64_t cutoff = kDefaultCutoff);

// f(1, z) = prod_p (1 + z/(p-1)) (1 - 1/p)^z.
EulerProduct selberg_factor(std::complex<double> z, std::uint64_t cutoff = kDefaultCutoff);

// prod_{p < y} (1 + (z-1)/p), finite.
std::complex<double> sieved_z_product(std::uint64_t y, std::complex<double> z,
                                           const PrimeTable& primes);

// log of the per-prime factor (1 - (k+1)/p)(1 - 1/p)^{-(k+1)} for p > k+1.
double constant_log_factor(unsigned k, double p);

}  // namespace parity_sieve

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "parity_sieve/exact_int.hpp"
#include "parity_sieve/prime_engine.hpp"

namespace parity_sieve {

// nu(n) never exceeds 15 for n <= 10^12.
inline constexpr std::size_t kMaxNu = 15;
inline constexpr std::uint64_t kMaxStreamedX = 1'000'000'000;

// Exact sum_{n <= x} z^{nu_y(n)} for integer z, streamed over sieve
// segments. 0^0 = 1, so z = 0 counts the n with nu_y(n) = 0.
ExactInt integer_power_sum(std::uint64_t x, SieveBound bound, std::int64_t z);

// S_{-k}(x, y) = sum_{n <= x} (-k)^{nu_y(n)}.
ExactInt signed_power_sum(std::uint64_t x, std::uint64_t y, unsigned k);

// S_{-k}(t, y) for every 0 <= t <= x_max (entry 0 is the empty sum).
std::vector<ExactInt> signed_power_prefix(std::uint64_t x_max, SieveBound bound, unsigned k);

struct NuHistogram {
  std::uint64_t x = 0;
  SieveBound bound;
  std::array<std::uint64_t, kMaxNu + 1> counts{};  // counts[j] = N_j(x, y)

  std::uint64_t total() const;
  // sum_j N_j z^j, exact for integer z.
  ExactInt evaluate(std::int64_t z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
};

NuHistogram nu_histogram(std::uint64_t x, SieveBound bound);

// S_z(x, y) through the histogram (independent of the streamed route).
std::complex<double> complex_power_sum(std::uint64_t x, SieveBound bound, std::complex<double> z);

// Integer threshold Y with {p prime : p < y^h} = {p prime : p < Y}.
std::uint64_t power_threshold(std::uint64_t y, double h);

// S_z(x,y) - S_z(x,Y) - (1-z) sum_{y <= p < Y} S_z(floor(x/p), p) for integer
// z. Exactly zero when the recurrence holds.
ExactInt buchstab_residual_exact(std::uint64_t x, std::uint64_t y, std::uint64_t y_upper,
                                 std::int64_t z);

// The S_{-k} form, with Y = power_threshold(y, h).
ExactInt buchstab_residual(std::uint64_t x, std::uint64_t y, double h, unsigned k);

struct ComplexResidual {
  std::complex<double> lhs;       // S_z(x, y)
  std::complex<double> rhs;       // S_z(x, Y) + (1-z) * prime sum
  double relative() const;        // |lhs - rhs| / max(1, |lhs|, |rhs|)
};

ComplexResidual buchstab_residual_complex(std::uint64_t x, std::uint64_t y,
                                          std::uint64_t y_upper, std::complex<double> z);

// Prefix sums S_{-k}(t, y) held implicitly through the per-n values nu_y(n)
// plus a checkpoint every kBlock entries.
class ExactSumSeries {
 public:
  static constexpr std::uint64_t kMaxInMemory = 100'000'000;
  static constexpr std::uint64_t kBlock = 1024;

  ExactSumSeries(std::uint64_t x_max, unsigned k, SieveBound bound);

  std::uint64_t x_max() const { return x_max_; }
  unsigned k() const { return k_; }
  SieveBound bound() const { return bound_; }
  bool full_nu() const { return bound_.is_unbounded(); }

  std::uint8_t nu(std::uint64_t n) const { return nu_[n]; }
  // (-k)^{nu_y(n)} for 1 <= n <= x_max.
  std::int64_t term(std::uint64_t n) const { return powers_[nu_[n]]; }
  double term_as_double(std::uint64_t n) const { return powers_double_[nu_[n]]; }

  // S_{-k}(t) for 0 <= t <= x_max.
  ExactInt at(std::uint64_t t) const;
  // S_{-k}(floor(t)) for real t >= 0.
  ExactInt at_real(double t) const;

  // fn(n, S_{-k}(n)) for lo <= n <= hi, ascending.
  void for_each_prefix(std::uint64_t lo, std::uint64_t hi,
                       const std::function<void(std::uint64_t, const ExactInt&)>& fn) const;

 private:
  std::uint64_t x_max_;
  unsigned k_;
  SieveBound bound_;
  std::vector<std::uint8_t> nu_;          // index n, entry 0 unused
  std::vector<ExactInt> checkpoints_;     // S(b * kBlock)
  std::array<std::int64_t, kMaxNu + 1> powers_{};
  std::array<double, kMaxNu + 1> powers_double_{};
};

// Full-nu series S_{-k}(t), t <= x_max.
ExactSumSeries prefix_series(std::uint64_t x_max, unsigned k);

struct FSequence {
  unsigned k = 0;
  double beta = 0;
  std::vector<double> values;  // values[j-1] = f_j(beta)
  std::vector<double> errors;  // rounding-error estimate per value

  double f(unsigned j) const { return values.at(j - 1); }
};

// f_j(beta), j = 1..j_max, via the closed-form kernel
//   f_j(beta) = sum_{n <= beta} a_n phi_j(n, beta),
//   phi_j = (1/n) sum_{i<j} (-1)^{j-1-i} u^i / i! + (-1)^j / beta,  u = log(beta/n).
FSequence f_sequence(const ExactSumSeries& series, double beta, unsigned j_max);

// Same values from the prefix moments M_r(beta) = sum_{n<=beta} a_n log^r n / n.
// O(j^2) once the moments are known; used for quadrature inner loops.
class FEvaluator {
 public:
  FEvaluator(unsigned j, std::span<const double> moments, double prefix_sum);
  double operator()(double t) const;

  // Coefficient of M_r in f_j when expanded in powers of L = log t.
  static double kernel_coefficient(unsigned j, unsigned r, double log_t);

 private:
  unsigned j_;
  std::vector<double> moments_;
  double prefix_sum_;
};

// F_{j,l}(beta) = int_1^beta f_j(t) log^l t / t dt.
double F_integral(const ExactSumSeries& series, double beta, unsigned j, unsigned ell);

// sum_{n <= N} (-k)^{nu(n)} log^j n / n for j = 0..j_max, ascending-n
// compensated summation with a fixed-order segment reduction.
std::vector<double> dirichlet_log_sums(std::uint64_t N, unsigned k, unsigned j_max);
double dirichlet_log_sum(std::uint64_t N, unsigned k, unsigned j);

}  // namespace parity_sieve

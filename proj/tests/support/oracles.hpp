#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// the library's sieve or product code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Distinct prime factors of n below y (all of them when y is empty).
inline unsigned nu(std::uint64_t n, std::optional<std::uint64_t> y = std::nullopt) {
  unsigned c = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (!y || d < *y) ++c;
    while (n % d == 0) n /= d;
  }
  if (n > 1 && (!y || n < *y)) ++c;
  return c;
}

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

// sum_{n <= x} z^{nu_y(n)} with plain 64-bit arithmetic (small x only).
inline std::int64_t power_sum(std::uint64_t x, std::optional<std::uint64_t> y, std::int64_t z) {
  std::int64_t s = 0;
  for (std::uint64_t n = 1; n <= x; ++n) s += ipow(z, nu(n, y));
  return s;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// Direct product of factor(p) over primes p <= cutoff, long double.
inline long double product(std::uint64_t cutoff, const std::function<long double(long double)>& factor) {
  long double prod = 1.0L;
  std::vector<char> composite(cutoff + 1, 0);
  for (std::uint64_t p = 2; p <= cutoff; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= cutoff; q += p) composite[q] = 1;
    prod *= factor(static_cast<long double>(p));
  }
  return prod;
}

// f_1 .. f_jmax at beta from the defining integrals
//   f_1(t) = int_1^t S(u) u^{-2} du,  f_{j+1}(t) = int_1^t f_j(u) du / u,
// integrated as an ODE system in v = log t with classical RK4, `sub` steps
// per integer segment. S is read from `partial_sums[n]` = S(n).
inline std::vector<double> f_by_rk4(const std::vector<std::int64_t>& partial_sums, double beta,
                                    unsigned jmax, unsigned sub = 64) {
  std::vector<double> f(jmax, 0.0);
  auto rhs = [&](double s_val, double v, const std::vector<double>& y) {
    std::vector<double> d(jmax);
    d[0] = s_val * std::exp(-v);
    for (unsigned j = 1; j < jmax; ++j) d[j] = y[j - 1];
    return d;
  };
  for (std::uint64_t n = 1; static_cast<double>(n) < beta; ++n) {
    const double a = std::log(static_cast<double>(n));
    const double b = std::log(std::min(beta, static_cast<double>(n + 1)));
    const double h = (b - a) / sub;
    const double s_val = static_cast<double>(partial_sums[n]);
    for (unsigned i = 0; i < sub; ++i) {
      const double v = a + i * h;
      auto k1 = rhs(s_val, v, f);
      std::vector<double> t(jmax);
      for (unsigned j = 0; j < jmax; ++j) t[j] = f[j] + 0.5 * h * k1[j];
      auto k2 = rhs(s_val, v + 0.5 * h, t);
      for (unsigned j = 0; j < jmax; ++j) t[j] = f[j] + 0.5 * h * k2[j];
      auto k3 = rhs(s_val, v + 0.5 * h, t);
      for (unsigned j = 0; j < jmax; ++j) t[j] = f[j] + h * k3[j];
      auto k4 = rhs(s_val, v + h, t);
      for (unsigned j = 0; j < jmax; ++j) f[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
  }
  return f;
}

// Partial sums S_{-k}(n) for n = 0..x_max by trial division.
inline std::vector<std::int64_t> signed_partial_sums(std::uint64_t x_max, unsigned k) {
  std::vector<std::int64_t> s(x_max + 1, 0);
  for (std::uint64_t n = 1; n <= x_max; ++n) s[n] = s[n - 1] + ipow(-static_cast<std::int64_t>(k), nu(n));
  return s;
}

}  // namespace oracle

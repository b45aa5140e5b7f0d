#include "parity_sieve/euler_constants.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "parity_sieve/compensated.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/parallel.hpp"

namespace parity_sieve {
namespace {

using Complex = std::complex<double>;
using LogFactor = std::function<Complex(double)>;

// log(1 + w) without the cancellation of std::log for tiny |w|.
Complex clog1p(Complex w) {
  if (std::abs(w) > 1e-4) return std::log(1.0 + w);
  return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
}

constexpr std::size_t kPrimeBlock = std::size_t{1} << 16;

void check_cutoff(std::uint64_t cutoff) {
  if (cutoff < 2 || cutoff > PrimeTable::kMaxLimit)
    fail(ErrorCode::kBounds, "cutoff must lie in [2, 10^9]");
}

struct Accumulated {
  Complex log_sum;
  bool zero = false;
  std::size_t factors = 0;
};

// Sum of log factors over p <= cutoff (skipping `skip`), reduced block by
// block in prime order. A factor that is exactly zero short-circuits.
Accumulated accumulate(std::uint64_t cutoff, std::uint64_t skip,
                       const std::function<Complex(std::uint64_t)>& log_factor,
                       const std::function<bool(std::uint64_t)>& is_zero) {
  const auto table = shared_primes(cutoff);
  const auto primes = table->primes().first(table->count_below(cutoff + 1));
  const std::size_t blocks = (primes.size() + kPrimeBlock - 1) / kPrimeBlock;
  std::vector<CompensatedSum<Complex>> partial(blocks);
  std::vector<char> zero(blocks, 0);
  std::vector<std::size_t> counted(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kPrimeBlock;
    const std::size_t hi = std::min(primes.size(), lo + kPrimeBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t p = primes[i];
      if (p == skip) continue;
      ++counted[b];
      if (is_zero(p)) {
        zero[b] = 1;
        continue;
      }
      partial[b].add(log_factor(p));
    }
  });
  Accumulated out;
  CompensatedSum<Complex> total;
  for (std::size_t b = 0; b < blocks; ++b) {
    total.add(partial[b]);
    out.zero = out.zero || zero[b] != 0;
    out.factors += counted[b];
  }
  out.log_sum = total.value();
  return out;
}

// int_P^inf g(t) dt / log t with t = P e^s, composite 8-point Gauss-Legendre
// in s over [0, 64].
Complex tail_integral(double P, const LogFactor& g) {
  static constexpr std::array<double, 8> kNodes = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
      0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static constexpr std::array<double, 8> kWeights = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
      0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  CompensatedSum<Complex> sum;
  const double log_p = std::log(P);
  constexpr double kPanel = 0.25;
  for (double a = 0.0; a < 64.0; a += kPanel) {
    Complex panel = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const double s = a + 0.5 * kPanel * (1.0 + kNodes[q]);
      const double t = P * std::exp(s);
      panel += kWeights[q] * g(t) * (t / (log_p + s));
    }
    sum.add(0.5 * kPanel * panel);
  }
  return sum.value();
}

EulerProduct finish(const Accumulated& acc, std::uint64_t cutoff, Complex prefactor,
                    const LogFactor& tail_log_factor, double tail_bound) {
  EulerProduct out;
  out.cutoff = cutoff;
  out.factor_count = acc.factors;
  out.tail_bound = tail_bound;
  if (acc.zero) {
    out.value = out.corrected = 0.0;
    out.tail_estimate = 0.0;
    out.tail_bound = 0.0;
    return out;
  }
  out.value = prefactor * std::exp(acc.log_sum);
  // The density estimate is only meaningful once the factors are in their
  // asymptotic regime, which is also where the bound is finite.
  out.tail_estimate = std::isfinite(tail_bound)
                          ? tail_integral(static_cast<double>(cutoff), tail_log_factor)
                          : Complex(0.0);
  out.corrected = prefactor * std::exp(acc.log_sum + out.tail_estimate);
  return out;
}

// Bound on sum_{p > P} |log F(p)| given |log F(t)| <= C / t^2 for t > P.
double quadratic_tail_bound(double C, double P, double valid_from) {
  if (P < valid_from) return std::numeric_limits<double>::infinity();
  return C / (P - 1.0);
}

// Product part shared by b_k, c_k and l(-k); the factor at p = skip is left out.
EulerProduct constant_product(unsigned k, std::uint64_t cutoff, std::uint64_t skip,
                              Complex prefactor) {
  check_cutoff(cutoff);
  const double kp1 = static_cast<double>(k) + 1.0;
  auto real_log = [k, kp1](std::uint64_t p) -> Complex {
    const double pd = static_cast<double>(p);
    // |1 - (k+1)/p| (1 - 1/p)^{-(k+1)}; the sign is tracked separately.
    if (pd > kp1) return constant_log_factor(k, pd);
    return std::log(std::fabs(1.0 - kp1 / pd)) - kp1 * std::log1p(-1.0 / pd);
  };
  // Negative factors occur only for p < k+1.
  int negatives = 0;
  for (std::uint64_t p = 2; p < k + 1 && p <= cutoff; ++p)
    if (is_prime(p) && p != skip) ++negatives;
  const auto acc = accumulate(
      cutoff, skip, real_log, [k](std::uint64_t p) { return p == k + 1; });
  const Complex signed_prefactor = (negatives % 2 == 0 ? 1.0 : -1.0) * prefactor;
  return finish(acc, cutoff, signed_prefactor,
                [k](double t) -> Complex { return constant_log_factor(k, t); },
                quadratic_tail_bound(kp1 * kp1, static_cast<double>(cutoff), 2.0 * kp1));
}

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const PrimeTable>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.lower_bound(limit);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const PrimeTable>(std::max<std::uint64_t>(limit, 2));
  cache.emplace(table->limit(), table);
  return table;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_case_two(unsigned k) { return is_prime(std::uint64_t{k} + 1); }

double constant_log_factor(unsigned k, double p) {
  const double kp1 = static_cast<double>(k) + 1.0;
  return std::log1p(-kp1 / p) - kp1 * std::log1p(-1.0 / p);
}

EulerProduct G_eval(Complex s, unsigned k, std::uint64_t cutoff) {
  if (!(s.real() > 1.0))
    fail(ErrorCode::kDomain, "G_k(s) product requires Re s > 1");
  check_cutoff(cutoff);
  const double kd = static_cast<double>(k);
  auto g = [s, kd](double t) -> Complex {
    return clog1p(-kd / (std::pow(Complex(t, 0.0), s) - 1.0));
  };
  const auto acc = accumulate(
      cutoff, 0, [&g](std::uint64_t p) { return g(static_cast<double>(p)); },
      [s, kd](std::uint64_t p) {
        return std::abs(std::pow(Complex(static_cast<double>(p), 0.0), s) - 1.0 - kd) == 0.0;
      });
  // |log(1 - w)| <= 2|w| for |w| <= 1/2, and sum_{n > P} n^{-sigma} <= P^{1-sigma}/(sigma-1).
  const double sigma = s.real();
  const double P = static_cast<double>(cutoff);
  double bound = std::numeric_limits<double>::infinity();
  if (std::pow(P, sigma) >= 2.0 * kd + 1.0)
    bound = 4.0 * kd * std::pow(P, 1.0 - sigma) / (sigma - 1.0);
  if (k == 0) bound = 0.0;
  return finish(acc, cutoff, 1.0, g, bound);
}

EulerProduct b_constant(unsigned k, std::uint64_t cutoff) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  if (is_case_two(k))
    fail(ErrorCode::kCase, "b_k is the Case 1 constant (k+1 composite); use c_constant");
  return constant_product(k, cutoff, 0, factorial(k));
}

EulerProduct c_constant(unsigned k, std::uint64_t cutoff) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  if (!is_case_two(k))
    fail(ErrorCode::kCase, "c_k is the Case 2 constant (k+1 prime); use b_constant");
  const double kd = static_cast<double>(k);
  const double pre = factorial(k + 1) * std::pow(1.0 + 1.0 / kd, kd + 1.0) * std::log(kd + 1.0);
  return constant_product(k, cutoff, k + 1, pre);
}

EulerProduct limit_constant(unsigned k, std::uint64_t cutoff) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  const double pre = std::exp(-(static_cast<double>(k) + 1.0) * kEulerGamma);
  return constant_product(k, cutoff, 0, pre);
}

EulerProduct selberg_factor(Complex z, std::uint64_t cutoff) {
  check_cutoff(cutoff);
  auto g = [z](double t) -> Complex {
    return clog1p(z / (t - 1.0)) + z * std::log1p(-1.0 / t);
  };
  const auto acc = accumulate(
      cutoff, 0, [&g](std::uint64_t p) { return g(static_cast<double>(p)); },
      [z](std::uint64_t p) { return z == Complex(1.0 - static_cast<double>(p), 0.0); });
  const double r = std::abs(z) + 1.0;
  return finish(acc, cutoff, 1.0, g,
                quadratic_tail_bound(2.0 * r * r, static_cast<double>(cutoff), 4.0 * r));
}

Complex sieved_z_product(std::uint64_t y, Complex z, const PrimeTable& primes) {
  if (y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  if (y > 2 && primes.limit() < y - 1)
    fail(ErrorCode::kBounds, "prime table does not reach y - 1");
  Complex prod = 1.0;
  for (const std::uint64_t p : primes.primes()) {
    if (p >= y) break;
    prod *= 1.0 + (z - 1.0) / static_cast<double>(p);
  }
  return prod;
}

}  // namespace parity_sieve

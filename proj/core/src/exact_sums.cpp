#include "parity_sieve/exact_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parity_sieve/compensated.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/parallel.hpp"

namespace parity_sieve {
namespace {

constexpr std::int64_t kMaxBase = 16;  // |z|^15 stays inside int64

void check_x(std::uint64_t x) {
  if (x < 1 || x > kMaxStreamedX)
    fail(ErrorCode::kBounds, "x must lie in [1, 10^9], got " + std::to_string(x));
}

void check_base(std::int64_t z) {
  if (z < -kMaxBase || z > kMaxBase)
    fail(ErrorCode::kBounds, "integer base must satisfy |z| <= 16");
}

std::array<ExactInt, kMaxNu + 1> power_table(std::int64_t z) {
  std::array<ExactInt, kMaxNu + 1> t;
  for (unsigned e = 0; e <= kMaxNu; ++e) t[e] = checked_pow(z, e);
  return t;
}

// Exact per-segment sums merged in segment order.
ExactInt stream_power_sum(const NuSieve& sieve, std::uint64_t x, std::int64_t z) {
  const auto powers = power_table(z);
  const auto chunks = split_range(1, x + 1, NuSieve::kDefaultSegment);
  std::vector<ExactInt> partial(chunks.size());
  parallel_for(chunks.size(), [&](std::size_t c) {
    const auto [lo, hi] = chunks[c];
    std::vector<std::uint8_t> counts(hi - lo);
    std::vector<std::uint64_t> scratch(sieve.needs_cofactor() ? hi - lo : 0);
    sieve.sieve_into(lo, hi, counts, scratch);
    std::array<std::uint64_t, kMaxNu + 1> hist{};
    for (const auto v : counts) ++hist[v];
    ExactInt s;
    for (unsigned j = 0; j <= kMaxNu; ++j)
      if (hist[j] != 0) s += powers[j] * ExactInt(static_cast<std::int64_t>(hist[j]));
    partial[c] = s;
  });
  ExactInt total;
  for (const auto& p : partial) total += p;
  return total;
}

std::vector<std::uint8_t> full_nu_values(std::uint64_t m) {
  std::vector<std::uint8_t> nu(m + 1, 0);
  if (m >= 1) {
    const auto table = sieve_nu(1, m + 1, SieveBound::unbounded());
    std::copy(table.counts.begin(), table.counts.end(), nu.begin() + 1);
  }
  return nu;
}

// Shared driver for both forms of the Buchstab recurrence. `sum(m, p)`
// evaluates S_z(m, p) for m >= p; smaller m use the full-nu prefix.
template <typename V, typename SumFn>
std::pair<V, V> buchstab_sides(std::uint64_t x, std::uint64_t y, std::uint64_t y_upper,
                               const std::vector<V>& full_prefix, V one_minus_z,
                               SumFn&& sum) {
  const V lhs = sum(x, y);
  const V upper = sum(x, y_upper);
  const std::uint64_t p_max = std::min<std::uint64_t>(x, y_upper - 1);
  V prime_sum{};
  if (p_max >= std::max<std::uint64_t>(y, 2)) {
    const PrimeTable primes(std::max<std::uint64_t>(p_max, 2));
    for (const std::uint64_t p : primes.primes()) {
      if (p < y) continue;
      if (p > p_max) break;
      const std::uint64_t m = x / p;
      // n <= m < p has no prime factor >= p, so nu_p(n) = nu(n).
      prime_sum += m < p ? full_prefix[m] : sum(m, p);
    }
  }
  return {lhs, upper + one_minus_z * prime_sum};
}

void check_buchstab_args(std::uint64_t x, std::uint64_t y, std::uint64_t y_upper) {
  check_x(x);
  if (y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  if (y_upper < y) fail(ErrorCode::kBounds, "upper sieving level must be >= y");
}

}  // namespace

ExactInt integer_power_sum(std::uint64_t x, SieveBound bound, std::int64_t z) {
  check_x(x);
  check_base(z);
  const NuSieve sieve(bound, x + 1);
  return stream_power_sum(sieve, x, z);
}

ExactInt signed_power_sum(std::uint64_t x, std::uint64_t y, unsigned k) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  if (y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  return integer_power_sum(x, SieveBound::below(y), -static_cast<std::int64_t>(k));
}

std::vector<ExactInt> signed_power_prefix(std::uint64_t x_max, SieveBound bound, unsigned k) {
  check_x(x_max);
  if (k < 1 || k > kMaxBase) fail(ErrorCode::kBounds, "k must lie in [1, 16]");
  if (x_max > ExactSumSeries::kMaxInMemory)
    fail(ErrorCode::kResource, "prefix table exceeds the in-memory budget");
  const auto powers = power_table(-static_cast<std::int64_t>(k));
  std::vector<ExactInt> prefix(x_max + 1);
  ExactInt acc;
  const NuSieve sieve(bound, x_max + 1);
  sieve.for_each_segment(1, x_max + 1, NuSieve::kDefaultSegment,
                         [&](std::uint64_t lo, std::span<const std::uint8_t> counts) {
                           for (std::size_t i = 0; i < counts.size(); ++i) {
                             acc += powers[counts[i]];
                             prefix[lo + i] = acc;
                           }
                         });
  return prefix;
}

std::uint64_t NuHistogram::total() const {
  std::uint64_t t = 0;
  for (const auto c : counts) t += c;
  return t;
}

ExactInt NuHistogram::evaluate(std::int64_t z) const {
  check_base(z);
  ExactInt s;
  ExactInt power = 1;
  for (unsigned j = 0; j <= kMaxNu; ++j) {
    if (counts[j] != 0) s += power * ExactInt(static_cast<std::int64_t>(counts[j]));
    if (j < kMaxNu) power *= z;
  }
  return s;
}

std::complex<double> NuHistogram::evaluate(std::complex<double> z) const {
  CompensatedSum<std::complex<double>> s;
  std::complex<double> power = 1.0;
  for (unsigned j = 0; j <= kMaxNu; ++j) {
    if (counts[j] != 0) s.add(power * static_cast<double>(counts[j]));
    power *= z;
  }
  return s.value();
}

NuHistogram nu_histogram(std::uint64_t x, SieveBound bound) {
  check_x(x);
  if (bound.y && *bound.y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  const NuSieve sieve(bound, x + 1);
  const auto chunks = split_range(1, x + 1, NuSieve::kDefaultSegment);
  std::vector<std::array<std::uint64_t, kMaxNu + 1>> partial(chunks.size());
  parallel_for(chunks.size(), [&](std::size_t c) {
    const auto [lo, hi] = chunks[c];
    std::vector<std::uint8_t> counts(hi - lo);
    std::vector<std::uint64_t> scratch(sieve.needs_cofactor() ? hi - lo : 0);
    sieve.sieve_into(lo, hi, counts, scratch);
    auto& h = partial[c];
    h.fill(0);
    for (const auto v : counts) ++h[v];
  });
  NuHistogram hist{x, bound, {}};
  for (const auto& h : partial)
    for (unsigned j = 0; j <= kMaxNu; ++j) hist.counts[j] += h[j];
  return hist;
}

std::complex<double> complex_power_sum(std::uint64_t x, SieveBound bound, std::complex<double> z) {
  return nu_histogram(x, bound).evaluate(z);
}

std::uint64_t power_threshold(std::uint64_t y, double h) {
  if (y < 2) fail(ErrorCode::kBounds, "y must be at least 2");
  if (!(h > 1.0)) fail(ErrorCode::kBounds, "h must exceed 1");
  const long double v = std::pow(static_cast<long double>(y), static_cast<long double>(h));
  if (v >= 1e18L) return static_cast<std::uint64_t>(1e18L);
  return static_cast<std::uint64_t>(std::ceil(v));
}

ExactInt buchstab_residual_exact(std::uint64_t x, std::uint64_t y, std::uint64_t y_upper,
                                 std::int64_t z) {
  check_buchstab_args(x, y, y_upper);
  check_base(z);
  const auto powers = power_table(z);
  const auto nu = full_nu_values(x / std::max<std::uint64_t>(y, 2));
  std::vector<ExactInt> full_prefix(nu.size());
  for (std::size_t m = 1; m < nu.size(); ++m) full_prefix[m] = full_prefix[m - 1] + powers[nu[m]];
  const auto [lhs, rhs] = buchstab_sides<ExactInt>(
      x, y, y_upper, full_prefix, ExactInt(1) - ExactInt(z),
      [&](std::uint64_t m, std::uint64_t level) {
        return integer_power_sum(m, SieveBound::below(level), z);
      });
  return lhs - rhs;
}

ExactInt buchstab_residual(std::uint64_t x, std::uint64_t y, double h, unsigned k) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  return buchstab_residual_exact(x, y, power_threshold(y, h), -static_cast<std::int64_t>(k));
}

double ComplexResidual::relative() const {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

ComplexResidual buchstab_residual_complex(std::uint64_t x, std::uint64_t y,
                                          std::uint64_t y_upper, std::complex<double> z) {
  check_buchstab_args(x, y, y_upper);
  const auto nu = full_nu_values(x / std::max<std::uint64_t>(y, 2));
  std::array<std::complex<double>, kMaxNu + 1> powers;
  powers[0] = 1.0;
  for (unsigned e = 1; e <= kMaxNu; ++e) powers[e] = powers[e - 1] * z;
  std::vector<std::complex<double>> full_prefix(nu.size());
  for (std::size_t m = 1; m < nu.size(); ++m) full_prefix[m] = full_prefix[m - 1] + powers[nu[m]];
  const auto [lhs, rhs] = buchstab_sides<std::complex<double>>(
      x, y, y_upper, full_prefix, 1.0 - z,
      [&](std::uint64_t m, std::uint64_t level) {
        return complex_power_sum(m, SieveBound::below(level), z);
      });
  return {lhs, rhs};
}

ExactSumSeries::ExactSumSeries(std::uint64_t x_max, unsigned k, SieveBound bound)
    : x_max_(x_max), k_(k), bound_(bound) {
  if (x_max < 1) fail(ErrorCode::kBounds, "x_max must be positive");
  if (x_max > kMaxInMemory)
    fail(ErrorCode::kResource, "series above 10^8 entries must be streamed");
  if (k < 1 || k > kMaxBase) fail(ErrorCode::kBounds, "k must lie in [1, 16]");
  for (unsigned e = 0; e <= kMaxNu; ++e) {
    powers_[e] = checked_pow(-static_cast<std::int64_t>(k), e).to_int64();
    powers_double_[e] = static_cast<double>(powers_[e]);
  }
  nu_.assign(x_max + 1, 0);
  const NuSieve sieve(bound, x_max + 1);
  const auto chunks = split_range(1, x_max + 1, NuSieve::kDefaultSegment);
  parallel_for(chunks.size(), [&](std::size_t c) {
    const auto [lo, hi] = chunks[c];
    std::vector<std::uint64_t> scratch(sieve.needs_cofactor() ? hi - lo : 0);
    sieve.sieve_into(lo, hi, std::span(nu_).subspan(lo, hi - lo), scratch);
  });
  checkpoints_.resize(x_max / kBlock + 1);
  ExactInt acc;
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    acc += powers_[nu_[n]];
    if (n % kBlock == 0) checkpoints_[n / kBlock] = acc;
  }
}

ExactInt ExactSumSeries::at(std::uint64_t t) const {
  if (t > x_max_) fail(ErrorCode::kRange, "series evaluated beyond x_max");
  const std::uint64_t b = t / kBlock;
  ExactInt s = checkpoints_[b];
  for (std::uint64_t n = b * kBlock + 1; n <= t; ++n) s += powers_[nu_[n]];
  return s;
}

ExactInt ExactSumSeries::at_real(double t) const {
  if (!(t >= 0)) fail(ErrorCode::kRange, "series argument must be non-negative");
  return at(static_cast<std::uint64_t>(std::floor(t)));
}

void ExactSumSeries::for_each_prefix(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t, const ExactInt&)>& fn) const {
  if (hi > x_max_) fail(ErrorCode::kRange, "series evaluated beyond x_max");
  if (lo < 1 || hi < lo) return;
  ExactInt s = at(lo - 1);
  for (std::uint64_t n = lo; n <= hi; ++n) {
    s += powers_[nu_[n]];
    fn(n, s);
  }
}

ExactSumSeries prefix_series(std::uint64_t x_max, unsigned k) {
  return ExactSumSeries(x_max, k, SieveBound::unbounded());
}

FSequence f_sequence(const ExactSumSeries& series, double beta, unsigned j_max) {
  if (!series.full_nu())
    fail(ErrorCode::kBounds, "f_j is defined over the full-nu series");
  if (!(beta > 1.0) || beta > static_cast<double>(series.x_max()))
    fail(ErrorCode::kRange, "beta must lie in (1, x_max]");
  if (j_max < 1 || j_max > series.k() + 2) fail(ErrorCode::kBounds, "j_max must lie in [1, k+2]");

  const auto n_max = static_cast<std::uint64_t>(std::floor(beta));
  const double log_beta = std::log(beta);
  std::vector<CompensatedSum<double>> sums(j_max);
  std::vector<double> magnitude(j_max, 0.0);
  std::vector<double> poly(j_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double a = series.term_as_double(n);
    const double u = log_beta - std::log(static_cast<double>(n));
    const double inv_n = 1.0 / static_cast<double>(n);
    // P_1 = 1, P_{j+1}(u) = u^j / j! - P_j(u)
    double u_pow = 1.0;
    double p = 1.0;
    for (unsigned j = 1; j <= j_max; ++j) {
      if (j > 1) {
        u_pow *= u / static_cast<double>(j - 1);
        p = u_pow - p;
      }
      const double term = a * p * inv_n;
      sums[j - 1].add(term);
      magnitude[j - 1] += std::fabs(term);
    }
  }
  // The (-1)^j / beta part of every kernel sums to (-1)^j S(beta) / beta.
  const double s_beta = series.at(n_max).to_double();
  FSequence out{series.k(), beta, {}, {}};
  for (unsigned j = 1; j <= j_max; ++j) {
    const double tail = (j % 2 == 0 ? 1.0 : -1.0) * s_beta / beta;
    out.values.push_back(sums[j - 1].value() + tail);
    out.errors.push_back(4.0 * std::numeric_limits<double>::epsilon() *
                         (magnitude[j - 1] + std::fabs(tail)));
  }
  return out;
}

FEvaluator::FEvaluator(unsigned j, std::span<const double> moments, double prefix_sum)
    : j_(j), moments_(moments.begin(), moments.end()), prefix_sum_(prefix_sum) {
  if (moments_.size() < j) fail(ErrorCode::kBounds, "need moments M_0..M_{j-1}");
}

double FEvaluator::kernel_coefficient(unsigned j, unsigned r, double log_t) {
  // sum_{i=r}^{j-1} (-1)^{j-1-i} C(i,r) L^{i-r} (-1)^r / i!
  //   = (-1)^r / r! * sum_{m=0}^{j-1-r} (-1)^{j-1-r-m} L^m / m!
  double s = 0.0;
  double term = 1.0;
  for (unsigned m = 0; m + r <= j - 1; ++m) {
    if (m > 0) term *= log_t / static_cast<double>(m);
    s += ((j - 1 - r - m) % 2 == 0 ? term : -term);
  }
  double inv_rfact = 1.0;
  for (unsigned i = 2; i <= r; ++i) inv_rfact /= static_cast<double>(i);
  return (r % 2 == 0 ? 1.0 : -1.0) * inv_rfact * s;
}

double FEvaluator::operator()(double t) const {
  const double log_t = std::log(t);
  double s = 0.0;
  for (unsigned r = 0; r < j_; ++r) s += moments_[r] * kernel_coefficient(j_, r, log_t);
  return s + (j_ % 2 == 0 ? 1.0 : -1.0) * prefix_sum_ / t;
}

double F_integral(const ExactSumSeries& series, double beta, unsigned j, unsigned ell) {
  if (!series.full_nu()) fail(ErrorCode::kBounds, "F_{j,l} is defined over the full-nu series");
  if (!(beta >= 1.0) || beta > static_cast<double>(series.x_max()))
    fail(ErrorCode::kRange, "beta must lie in [1, x_max]");
  if (j < 1 || j > series.k() + 2) fail(ErrorCode::kBounds, "j must lie in [1, k+2]");
  if (ell > series.k() + 2) fail(ErrorCode::kBounds, "l must lie in [0, k+2]");

  // 8-point Gauss-Legendre in v = log t on every [n, n+1): the moments are
  // constant there and the integrand is a polynomial in v plus e^{-v} v^l.
  static constexpr std::array<double, 8> kNodes = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
      0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static constexpr std::array<double, 8> kWeights = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
      0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

  std::vector<CompensatedSum<double>> moments(j);
  std::vector<double> m(j);
  double prefix = 0.0;
  CompensatedSum<double> total;
  const double log_beta = std::log(beta);
  for (std::uint64_t n = 1; static_cast<double>(n) < beta; ++n) {
    const double a = series.term_as_double(n);
    const double log_n = std::log(static_cast<double>(n));
    double lp = 1.0;
    for (unsigned r = 0; r < j; ++r) {
      moments[r].add(a * lp / static_cast<double>(n));
      lp *= log_n;
    }
    prefix += a;
    for (unsigned r = 0; r < j; ++r) m[r] = moments[r].value();
    const FEvaluator f(j, m, prefix);
    const double v0 = log_n;
    const double v1 = std::min(std::log(static_cast<double>(n + 1)), log_beta);
    const double half = 0.5 * (v1 - v0);
    const double mid = 0.5 * (v1 + v0);
    double seg = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const double v = mid + half * kNodes[q];
      seg += kWeights[q] * f(std::exp(v)) * std::pow(v, static_cast<double>(ell));
    }
    total.add(half * seg);
  }
  return total.value();
}

std::vector<double> dirichlet_log_sums(std::uint64_t N, unsigned k, unsigned j_max) {
  check_x(N);
  if (k < 1 || k > kMaxBase) fail(ErrorCode::kBounds, "k must lie in [1, 16]");
  std::array<double, kMaxNu + 1> powers{};
  for (unsigned e = 0; e <= kMaxNu; ++e)
    powers[e] = checked_pow(-static_cast<std::int64_t>(k), e).to_double();
  const NuSieve sieve(SieveBound::unbounded(), N + 1);
  const auto chunks = split_range(1, N + 1, NuSieve::kDefaultSegment);
  std::vector<std::vector<CompensatedSum<double>>> partial(
      chunks.size(), std::vector<CompensatedSum<double>>(j_max + 1));
  parallel_for(chunks.size(), [&](std::size_t c) {
    const auto [lo, hi] = chunks[c];
    std::vector<std::uint8_t> counts(hi - lo);
    std::vector<std::uint64_t> scratch(sieve.needs_cofactor() ? hi - lo : 0);
    sieve.sieve_into(lo, hi, counts, scratch);
    auto& acc = partial[c];
    for (std::uint64_t n = lo; n < hi; ++n) {
      const double base = powers[counts[n - lo]] / static_cast<double>(n);
      const double log_n = std::log(static_cast<double>(n));
      double lp = 1.0;
      for (unsigned j = 0; j <= j_max; ++j) {
        acc[j].add(base * lp);
        lp *= log_n;
      }
    }
  });
  std::vector<double> out(j_max + 1);
  for (unsigned j = 0; j <= j_max; ++j) {
    CompensatedSum<double> s;
    for (const auto& p : partial) s.add(p[j]);
    out[j] = s.value();
  }
  return out;
}

double dirichlet_log_sum(std::uint64_t N, unsigned k, unsigned j) {
  return dirichlet_log_sums(N, k, j)[j];
}

}  // namespace parity_sieve

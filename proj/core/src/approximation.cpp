#include "parity_sieve/approximation.hpp"

#include <array>
#include <cmath>
#include <string>

#include "parity_sieve/compensated.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/euler_constants.hpp"

namespace parity_sieve {
namespace {

constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563,
                                               0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

unsigned case_index(SumCase c) { return c == SumCase::kCase1 ? 1 : 2; }

void check_large_y(std::uint64_t x, std::uint64_t y) {
  if (y < 2 || y >= x || static_cast<long double>(y) * y < static_cast<long double>(x))
    fail(ErrorCode::kRange, "the expansion needs sqrt(x) <= y < x");
}

}  // namespace

ScaleParameters scale_parameters(std::uint64_t x, std::uint64_t y) {
  if (x < 2 || y < 2) fail(ErrorCode::kBounds, "x and y must be at least 2");
  ScaleParameters s;
  const double lx = std::log(static_cast<double>(x));
  const double ly = std::log(static_cast<double>(y));
  s.alpha = lx / ly;
  s.beta = static_cast<double>(x) / static_cast<double>(y);
  const auto levels = static_cast<unsigned>(std::ceil(s.alpha));
  for (unsigned l = 1; l <= levels; ++l) s.beta_ell.push_back(std::exp(lx - l * ly));
  return s;
}

ContinuousApprox continuous_approx(const ExactSumSeries& series, const WkSolution& sol,
                                   std::uint64_t x, std::uint64_t y) {
  if (!series.full_nu()) fail(ErrorCode::kBounds, "A_{i,k} uses the full-nu series");
  if (y < 2 || y > x) fail(ErrorCode::kBounds, "need 2 <= y <= x");
  const double lx = std::log(static_cast<double>(x));
  const double ly = std::log(static_cast<double>(y));
  const double beta = static_cast<double>(x) / static_cast<double>(y);
  if (static_cast<double>(series.x_max()) < std::floor(beta))
    fail(ErrorCode::kRange, "series does not reach x / y");
  if (lx / ly > sol.alpha_max()) fail(ErrorCode::kRange, "solution does not reach log x / log y");
  if (series.k() != sol.k()) fail(ErrorCode::kBounds, "series and solution use different k");

  // w is continuous for alpha > 1; the side only matters at integer nodes.
  auto g = [&](double t) {
    const double a = (lx - std::log(t)) / ly;
    if (a <= 1.0) return 0.0;
    return sol.value(0, a, Side::kLeft) / (t * t);
  };
  // 1/t^2 has a large eighth derivative near t = 1, so segments are split
  // into panels of length <= t/16 before the 4-point rule is applied.
  auto gauss = [&](double a, double b) {
    const auto pieces = static_cast<int>(std::ceil(16.0 * (b - a) / a));
    const double len = (b - a) / pieces;
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + p * len;
      const double half = 0.5 * len;
      const double mid = lo + half;
      double s = 0.0;
      for (std::size_t q = 0; q < kGaussNodes.size(); ++q)
        s += kGaussWeights[q] * g(mid + half * kGaussNodes[q]);
      total += half * s;
    }
    return total;
  };

  ContinuousApprox out;
  CompensatedSum<double> total;
  double error = 0.0;
  ExactInt prefix;
  std::uint64_t n = 1;
  for (; static_cast<double>(n) < beta && n < kAggregateFrom; ++n) {
    prefix += series.term(n);
    const double b = std::min(beta, static_cast<double>(n + 1));
    total.add(prefix.to_double() * gauss(static_cast<double>(n), b));
    ++out.panels;
  }
  // Log-spaced blocks of about n/1024 integers: the block contributes
  // (mean S) * int g, with error at most (max S - min S)/2 * int |g|.
  while (static_cast<double>(n) < beta) {
    const std::uint64_t len = std::max<std::uint64_t>(1, n >> 10);
    const auto end = std::min<std::uint64_t>(n + len, static_cast<std::uint64_t>(std::ceil(beta)));
    double s_sum = 0.0;
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -s_min;
    std::uint64_t count = 0;
    for (std::uint64_t t = n; t < end; ++t) {
      prefix += series.term(t);
      const double s = prefix.to_double();
      s_sum += s;
      s_min = std::min(s_min, s);
      s_max = std::max(s_max, s);
      ++count;
    }
    const double b = std::min(beta, static_cast<double>(end));
    const double integral = gauss(static_cast<double>(n), b);
    total.add(s_sum / static_cast<double>(count) * integral);
    error += 0.5 * (s_max - s_min) * std::fabs(integral);
    ++out.panels;
    n = end;
  }
  const double scale = static_cast<double>(x) / ly;
  out.value = scale * total.value();
  out.aggregation_error = scale * error;
  return out;
}

Expansion theorem_expansion(const ExactSumSeries& series, std::uint64_t x, std::uint64_t y,
                            double constant) {
  check_large_y(x, y);
  const unsigned k = series.k();
  const SumCase c = case_of(k);
  const unsigned i = case_index(c);
  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  const double ly = std::log(static_cast<double>(y));
  const double beta = xd / static_cast<double>(y);
  const double kp1 = static_cast<double>(k) + 1.0;

  Expansion e;
  e.sum_case = c;
  const unsigned j_max = k + i - 1;
  CompensatedSum<double> sum;
  if (beta > 1.0) {
    const auto f = f_sequence(series, beta, j_max);
    for (unsigned j = 1; j <= j_max; ++j) {
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      const double v = kp1 * xd * sign * factorial(j - 1) * f.f(j) / std::pow(ly, j);
      e.terms.push_back({"f_" + std::to_string(j), v});
      sum.add(v);
    }
  } else {
    for (unsigned j = 1; j <= j_max; ++j) e.terms.push_back({"f_" + std::to_string(j), 0.0});
  }
  const double sign = ((k + i - 1) % 2 == 0) ? 1.0 : -1.0;
  e.constant_term = sign * constant * kp1 * xd / std::pow(lx, k + i);
  e.terms.push_back({c == SumCase::kCase1 ? "b_k" : "c_k", e.constant_term});
  sum.add(e.constant_term);
  e.total = sum.value();
  return e;
}

double leading_term(const MFunction& m, std::uint64_t x, std::uint64_t y, double epsilon) {
  if (x < 2 || y < 2) fail(ErrorCode::kBounds, "x and y must be at least 2");
  const double ly = std::log(static_cast<double>(y));
  const double alpha = std::log(static_cast<double>(x)) / ly;
  if (!(alpha > 1.0)) fail(ErrorCode::kRange, "leading term needs alpha > 1");
  const unsigned k = m.solution().k();
  const unsigned i = case_index(m.sum_case());
  const double nearest = std::round(alpha);
  if (nearest >= 1.0 && nearest <= k + i && std::fabs(alpha - nearest) < epsilon)
    fail(ErrorCode::kProximity, "alpha lies within epsilon of a jump point");
  return static_cast<double>(x) * m(alpha) / std::pow(ly, k + i);
}

RatioCheck selberg_check(std::uint64_t x, unsigned z, std::uint64_t cutoff) {
  if (z < 1 || z > 4) fail(ErrorCode::kBounds, "selberg_check supports z in {1, 2, 3, 4}");
  if (x < 3) fail(ErrorCode::kBounds, "x must be at least 3");
  RatioCheck r;
  r.exact = integer_power_sum(x, SieveBound::unbounded(), z);
  const double xd = static_cast<double>(x);
  const double f = selberg_factor(std::complex<double>(z, 0.0), cutoff).corrected_real();
  r.model = xd * std::pow(std::log(xd), static_cast<double>(z) - 1.0) * f / factorial(z - 1);
  r.ratio = r.exact.to_double() / r.model;
  return r;
}

std::uint64_t small_y_limit(std::uint64_t x) {
  const double lx = std::log(static_cast<double>(x));
  if (lx <= std::exp(1.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(std::exp(kSmallYExponent * lx / std::log(lx))));
}

RatioCheck small_y_check(std::uint64_t x, std::uint64_t y, unsigned k) {
  if (k < 1) fail(ErrorCode::kBounds, "k must be positive");
  if (case_of(k) == SumCase::kCase2)
    fail(ErrorCode::kCase, "the small-y product vanishes in Case 2; only an upper bound exists");
  if (y < k + 2) fail(ErrorCode::kRange, "small-y regime starts at y = k + 2");
  if (y > small_y_limit(x)) fail(ErrorCode::kRange, "y exceeds x^{c / log log x}");
  RatioCheck r;
  r.exact = signed_power_sum(x, y, k);
  const PrimeTable primes(std::max<std::uint64_t>(y, 2));
  r.model = static_cast<double>(x) *
            sieved_z_product(y, std::complex<double>(-static_cast<double>(k), 0.0), primes).real();
  r.ratio = r.exact.to_double() / r.model;
  return r;
}

ApproxReport build_report(const ExactSumSeries& series, const WkSolution& sol, std::uint64_t x,
                          std::uint64_t y, double constant, const Tolerances& tol) {
  ApproxReport rep;
  rep.x = x;
  rep.y = y;
  rep.k = series.k();
  rep.sum_case = case_of(rep.k);
  rep.constant = constant;
  rep.scale = scale_parameters(x, y);
  rep.exact = signed_power_sum(x, y, rep.k);
  const unsigned i = case_index(rep.sum_case);
  const double lx = std::log(static_cast<double>(x));
  const double unit = static_cast<double>(x) / std::pow(lx, rep.k + i + 1);

  const bool large_y = y < x && static_cast<long double>(y) * y >= static_cast<long double>(x);
  if (large_y) {
    rep.expansion = theorem_expansion(series, x, y, constant);
    rep.approx = continuous_approx(series, sol, x, y);
    const double d_exact = std::fabs(rep.exact.to_double() - rep.expansion->total) / unit;
    const double d_approx = std::fabs(rep.approx->value - rep.expansion->total) / unit;
    rep.verdicts.push_back({"exact_vs_expansion", d_exact, tol.expansion_c, d_exact <= tol.expansion_c});
    rep.verdicts.push_back({"approx_vs_expansion", d_approx, tol.approx_c, d_approx <= tol.approx_c});
  }
  try {
    rep.leading = leading_term(MFunction(sol, rep.sum_case, constant), x, y);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kProximity && e.code() != ErrorCode::kRange) throw;
  }
  return rep;
}

}  // namespace parity_sieve

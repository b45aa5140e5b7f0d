#include <cmath>
#include <complex>

#include "parity_sieve/approximation.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/euler_constants.hpp"
#include "parity_sieve_cli/dispatch.hpp"
#include "parity_sieve_cli/splitmix.hpp"

namespace parity_sieve::cli {
namespace {

using Complex = std::complex<double>;

// Trial division, kept deliberately naive.
ExactInt brute_signed_sum(std::uint64_t x, std::uint64_t y, unsigned k) {
  ExactInt s;
  for (std::uint64_t n = 1; n <= x; ++n) {
    std::uint64_t m = n;
    unsigned nu = 0;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d) continue;
      if (d < y) ++nu;
      while (m % d == 0) m /= d;
    }
    if (m > 1 && m < y) ++nu;
    s += checked_pow(-static_cast<std::int64_t>(k), nu);
  }
  return s;
}

SuiteResult oracle_suite(const RunConfig& c) {
  SplitMix64 rng(c.seed);
  SuiteResult r;
  unsigned failed = 0;
  Json mismatches = Json::array();
  for (unsigned t = 0; t < c.trials; ++t) {
    const std::uint64_t x = rng.uniform(1, 2000);
    const std::uint64_t y = rng.uniform(2, std::max<std::uint64_t>(2, x));
    const auto k = static_cast<unsigned>(rng.uniform(1, 6));
    const ExactInt fast = signed_power_sum(x, y, k);
    const ExactInt slow = brute_signed_sum(x, y, k);
    if (fast != slow) {
      ++failed;
      mismatches.push_back({{"x", x}, {"y", y}, {"k", k}, {"sieve", fast.to_string()}, {"brute", slow.to_string()}});
    }
  }
  r.pass = failed == 0;
  r.json = {{"trials", c.trials}, {"failed", failed}, {"mismatches", mismatches}};
  return r;
}

SuiteResult buchstab_suite(const RunConfig& c, const Calibration& cal) {
  SplitMix64 rng(c.seed);
  SuiteResult r;
  Json tuples = Json::array();
  unsigned nonzero = 0;
  for (unsigned t = 0; t < c.trials; ++t) {
    const std::uint64_t x = rng.uniform(2, 1'000'000);
    const auto k = static_cast<unsigned>(rng.uniform(1, 8));
    auto y = static_cast<std::uint64_t>(std::exp(rng.unit() * std::log(static_cast<double>(x))));
    y = std::clamp<std::uint64_t>(y, 2, x);
    const double h = 1.0 + 2.0 * (1.0 - rng.unit());  // (1, 3]
    const ExactInt res = buchstab_residual(x, y, h, k);
    if (res != 0) ++nonzero;
    tuples.push_back({{"x", x}, {"y", y}, {"h", h}, {"k", k}, {"residual", res.to_string()}});
  }
  const double tol = cal.get("buchstab_complex_rel", 1e-9);
  Json complex_forms = Json::array();
  bool complex_ok = true;
  for (const Complex z : {Complex(-3, 0), Complex(2, 0), Complex(0, 1)}) {
    const auto res = buchstab_residual_complex(1'000'000, 11, 1000, z);
    const bool ok = res.relative() <= tol;
    complex_ok = complex_ok && ok;
    complex_forms.push_back({{"z", {{"re", z.real()}, {"im", z.imag()}}},
                             {"x", 1'000'000},
                             {"y", 11},
                             {"Y", 1000},
                             {"relative", res.relative()},
                             {"pass", ok}});
  }
  r.pass = nonzero == 0 && complex_ok;
  r.json = {{"trials", c.trials}, {"nonzero", nonzero}, {"tuples", tuples}, {"complex", complex_forms},
            {"tolerance", tol}};
  return r;
}

SuiteResult constants_suite(const Calibration& cal) {
  SuiteResult r;
  const double conv_tol = cal.get("constants_convergence_rel", 1e-8);
  const double id_tol = cal.get("constants_identity_rel", 1e-10);
  Json conv = Json::array();
  auto converge = [&](const char* name, const EulerProduct& lo, const EulerProduct& hi) {
    const double rel = std::fabs(hi.corrected_real() - lo.corrected_real()) / std::fabs(hi.corrected_real());
    const double raw = std::fabs(hi.real() - lo.real()) / std::fabs(hi.real());
    const bool ok = rel < conv_tol;
    r.pass = r.pass && ok;
    conv.push_back({{"constant", name},
                    {"at_1e6", lo.corrected_real()},
                    {"at_1e7", hi.corrected_real()},
                    {"relative", rel},
                    {"relative_truncated", raw},
                    {"pass", ok}});
  };
  converge("b_3", b_constant(3, 1'000'000), b_constant(3, 10'000'000));
  converge("c_1", c_constant(1, 1'000'000), c_constant(1, 10'000'000));
  converge("ell(-3)", limit_constant(3, 1'000'000), limit_constant(3, 10'000'000));
  Json ident = Json::array();
  for (unsigned k = 1; k <= 9; ++k) {
    if (case_of(k) != SumCase::kCase1) continue;
    const double l = limit_constant(k).corrected_real();
    const double b = b_constant(k).corrected_real();
    double f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    const double rel = std::fabs(l * f * std::exp((k + 1) * kEulerGamma) - b) / std::fabs(b);
    const bool ok = rel < id_tol;
    r.pass = r.pass && ok;
    ident.push_back({{"k", k}, {"relative", rel}, {"pass", ok}});
  }
  r.json = {{"convergence", conv}, {"identity", ident}, {"tolerances", {conv_tol, id_tol}}};
  return r;
}

SuiteResult selberg_suite(const Calibration& cal) {
  SuiteResult r;
  const double lo = cal.get("selberg_lo", 0.9);
  const double hi = cal.get("selberg_hi", 1.2);
  const auto a = selberg_check(10'000, 2);
  const auto b = selberg_check(1'000'000, 2);
  const bool band = b.ratio >= lo && b.ratio <= hi;
  const bool trend = std::fabs(b.ratio - 1) < std::fabs(a.ratio - 1);
  r.pass = band && trend;
  r.json = {{"ratio_1e4", a.ratio}, {"ratio_1e6", b.ratio}, {"exact_1e6", b.exact.to_string()},
            {"model_1e6", b.model}, {"band", {lo, hi}}, {"band_pass", band}, {"trend_pass", trend}};
  return r;
}

SuiteResult small_y_suite(const Calibration& cal) {
  SuiteResult r;
  const double lo = cal.get("small_y_lo", 0.85);
  const double hi = cal.get("small_y_hi", 1.15);
  Json rows = Json::array();
  for (std::uint64_t y : {5u, 7u, 11u}) {
    const auto small = small_y_check(10'000, y, 3);
    const auto big = small_y_check(10'000'000, y, 3);
    const bool band = big.ratio >= lo && big.ratio <= hi;
    const bool trend = std::fabs(big.ratio - 1) < std::fabs(small.ratio - 1);
    r.pass = r.pass && band && trend;
    rows.push_back({{"y", y}, {"ratio_1e4", small.ratio}, {"ratio_1e7", big.ratio},
                    {"exact_1e7", big.exact.to_string()}, {"model_1e7", big.model},
                    {"band_pass", band}, {"trend_pass", trend}});
  }
  r.json = {{"k", 3}, {"band", {lo, hi}}, {"rows", rows}};
  return r;
}

SuiteResult expansion_suite(const Calibration& cal) {
  SuiteResult r;
  const double cap = cal.get("max_c", 100.0);
  Json per_k = Json::array();
  for (unsigned k : {1u, 3u}) {
    const unsigned i = case_of(k) == SumCase::kCase1 ? 1 : 2;
    const double constant = i == 1 ? b_constant(k).corrected_real() : c_constant(k).corrected_real();
    const auto sol = solve_wk(k, 4, 1.0 / 1024);
    double worst_exact = 0;
    double worst_approx = 0;
    Json rows = Json::array();
    for (std::uint64_t x : {100'000ull, 1'000'000ull}) {
      const auto series = prefix_series(x, k);
      const double unit = static_cast<double>(x) / std::pow(std::log(static_cast<double>(x)), k + i + 1);
      for (double e : {0.55, 0.7, 0.9}) {
        const auto y = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(x), e)));
        const double exact = signed_power_sum(x, y, k).to_double();
        const auto ex = theorem_expansion(series, x, y, constant);
        const auto ap = continuous_approx(series, sol, x, y);
        const double ce = std::fabs(exact - ex.total) / unit;
        const double ca = std::fabs(ap.value - ex.total) / unit;
        worst_exact = std::max(worst_exact, ce);
        worst_approx = std::max(worst_approx, ca);
        rows.push_back({{"x", x}, {"y", y}, {"exact", exact}, {"expansion", ex.total}, {"approx", ap.value},
                        {"c_exact", ce}, {"c_approx", ca}});
      }
    }
    const std::string suffix = ".k" + std::to_string(k);
    const double frozen_e = cal.require("expansion_c" + suffix);
    const double frozen_a = cal.require("approx_c" + suffix);
    const bool ok = worst_exact <= frozen_e && worst_approx <= frozen_a && frozen_e <= cap && frozen_a <= cap;
    r.pass = r.pass && ok;
    per_k.push_back({{"k", k}, {"case", case_label(case_of(k))}, {"measured_c_exact", worst_exact},
                     {"measured_c_approx", worst_approx}, {"frozen_c_exact", frozen_e},
                     {"frozen_c_approx", frozen_a}, {"cap", cap}, {"pass", ok}, {"rows", rows}});
  }
  r.json = {{"unit", "x / log^{k+i+1} x"}, {"per_k", per_k}};
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const RunConfig& c, const Calibration& cal) {
  if (name == "oracle") return oracle_suite(c);
  if (name == "buchstab") return buchstab_suite(c, cal);
  if (name == "constants") return constants_suite(cal);
  if (name == "selberg") return selberg_suite(cal);
  if (name == "small-y") return small_y_suite(cal);
  if (name == "expansion") return expansion_suite(cal);
  fail(ErrorCode::kBounds, "unknown suite '" + name + "'");
}

}  // namespace parity_sieve::cli

#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/euler_constants.hpp"
#include "parity_sieve/exact_sums.hpp"

using namespace parity_sieve;
using C = std::complex<double>;

namespace {
double fact(unsigned n) { return n < 2 ? 1.0 : n * fact(n - 1); }
}  // namespace

TEST_CASE("G_k(s) products") {
  CHECK(G_eval(C(2, 0), 1, 10).real() ==
        doctest::Approx(2.0 / 3 * 7.0 / 8 * 23.0 / 24 * 47.0 / 48).epsilon(1e-14));
  CHECK(G_eval(C(2, 0), 0, 1000).real() == 1.0);
  CHECK_THROWS_AS(G_eval(C(1, 5), 1), Error);

  double series = 0;
  const auto nu = sieve_nu(1, 1'000'001, SieveBound::unbounded());
  for (std::uint64_t n = 1; n <= 1'000'000; ++n)
    series += (nu.at(n) % 2 ? -1.0 : 1.0) / (double(n) * double(n));
  CHECK(std::fabs(G_eval(C(2, 0), 1, 1'000'000).real() - series) < 1e-6);
}

TEST_CASE("b_k") {
  CHECK(b_constant(3, 3).real() == doctest::Approx(162.0).epsilon(1e-14));
  CHECK_THROWS_AS(b_constant(1), Error);
  CHECK_THROWS_AS(b_constant(4), Error);
  const long double direct = 6.0L * oracle::product(1000, [](long double p) {
    return p * p * p * (p - 4) / ((p - 1) * (p - 1) * (p - 1) * (p - 1));
  });
  CHECK(b_constant(3, 1000).real() == doctest::Approx(double(direct)).epsilon(1e-12));
}

TEST_CASE("c_k") {
  CHECK(c_constant(1, 5).real() == doctest::Approx(8 * std::log(2.0) * 0.75 * 15.0 / 16).epsilon(1e-14));
  CHECK_THROWS_AS(c_constant(3), Error);
  const long double direct = 2.0L * 4.0L * std::log(2.0L) * oracle::product(1000, [](long double p) {
    return p == 2 ? 1.0L : p * (p - 2) / ((p - 1) * (p - 1));
  });
  CHECK(c_constant(1, 1000).real() == doctest::Approx(double(direct)).epsilon(1e-12));
}

TEST_CASE("limit constant") {
  CHECK(limit_constant(1).real() == 0.0);
  CHECK(limit_constant(2, 100).real() == 0.0);
  CHECK(limit_constant(3, 5).real() ==
        doctest::Approx(std::exp(-4 * kEulerGamma) * 3375.0 / 256).epsilon(1e-13));
  for (unsigned k : {3u, 5u, 7u, 8u, 9u}) {
    const double l = limit_constant(k, 100'000).real();
    const double b = b_constant(k, 100'000).real();
    CHECK(l * fact(k) * std::exp((k + 1) * kEulerGamma) == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("tail estimate moves the truncation toward the limit") {
  const auto lo = b_constant(3, 100'000);
  const auto hi = b_constant(3, 10'000'000);
  CHECK(std::isfinite(lo.tail_bound));
  CHECK(std::fabs(lo.corrected_real() - hi.value.real()) < std::fabs(lo.real() - hi.real()));
  CHECK(std::fabs(std::log(hi.corrected_real() / hi.real())) <= hi.tail_bound);
  // small cutoffs sit outside the bound's regime
  CHECK(std::isinf(b_constant(3, 3).tail_bound));
  CHECK(b_constant(3, 3).corrected_real() == b_constant(3, 3).real());
}

TEST_CASE("selberg factor") {
  CHECK(selberg_factor(C(1, 0), 1000).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(selberg_factor(C(0, 0), 1000).real() == 1.0);
  CHECK(selberg_factor(C(2, 0), 1'000'000).corrected_real() ==
        doctest::Approx(6.0 / (M_PI * M_PI)).epsilon(1e-9));
  CHECK(selberg_factor(C(2, 0), 1'000'000).real() ==
        doctest::Approx(6.0 / (M_PI * M_PI)).epsilon(1e-5));
  CHECK(selberg_factor(C(-1, 0), 1000).real() == 0.0);
  const C zi = selberg_factor(C(0, 1), 10'000).value;
  CHECK(std::isfinite(zi.real()));
  CHECK(std::isfinite(zi.imag()));
}

TEST_CASE("product over primes below y") {
  const PrimeTable t(100);
  CHECK(std::abs(sieved_z_product(3, C(-1, 0), t)) == 0.0);
  CHECK(sieved_z_product(4, C(-3, 0), t).real() == doctest::Approx(1.0 / 3));
  CHECK(sieved_z_product(2, C(7, 2), t) == C(1, 0));
  CHECK_THROWS_AS(sieved_z_product(500, C(2, 0), t), Error);
}

TEST_CASE("log factors are O(k^2/p^2)") {
  for (unsigned k = 1; k <= 9; ++k)
    for (double p : {4.0 * k + 1, 101.0, 1009.0, 99991.0})
      if (p >= 4 * k) CHECK(std::fabs(constant_log_factor(k, p)) <= 4.0 * k * k / (p * p));
}

TEST_CASE("case split") {
  CHECK(is_case_two(1));
  CHECK(is_case_two(2));
  CHECK_FALSE(is_case_two(3));
  CHECK(is_case_two(4));
  CHECK_FALSE(is_case_two(8));
  CHECK(is_case_two(10));
}

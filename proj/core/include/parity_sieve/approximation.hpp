#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parity_sieve/delay_solver.hpp"
#include "parity_sieve/exact_int.hpp"
#include "parity_sieve/exact_sums.hpp"

namespace parity_sieve {

// alpha = log x / log y, beta = x / y, beta_l = x / y^l for l = 1..ceil(alpha).
struct ScaleParameters {
  double alpha = 0;
  double beta = 0;
  std::vector<double> beta_ell;
};

ScaleParameters scale_parameters(std::uint64_t x, std::uint64_t y);

struct ContinuousApprox {
  double value = 0;
  // Bound on the error introduced by aggregating t > kAggregateFrom into
  // blocks with a block-averaged S.
  double aggregation_error = 0;
  std::uint64_t panels = 0;
};

inline constexpr std::uint64_t kAggregateFrom = 100'000;

// A_{i,k}(x, y) = (x / log y) int_1^{x/y} w_k((log x - log t) / log y) S_{-k}(t) / t^2 dt.
ContinuousApprox continuous_approx(const ExactSumSeries& series, const WkSolution& sol,
                                   std::uint64_t x, std::uint64_t y);

struct ExpansionTerm {
  std::string label;
  double value = 0;
};

struct Expansion {
  SumCase sum_case = SumCase::kCase1;
  std::vector<ExpansionTerm> terms;  // f_j terms, then the constant term
  double constant_term = 0;
  double total = 0;
};

// Terms (k+1) x (-1)^{j-1} (j-1)! f_j(beta) / log^j y for j = 1..k+i-1 and
// the constant term (-1)^{k+i-1} K (k+1) x / log^{k+i} x, where K = b_k
// (Case 1) or c_k (Case 2). Requires sqrt(x) <= y < x.
Expansion theorem_expansion(const ExactSumSeries& series, std::uint64_t x, std::uint64_t y,
                            double constant);

inline constexpr double kJumpExclusion = 0.05;

// x m_{i,k}(alpha) / log^{k+i} y, rejecting alpha within `epsilon` of an
// integer 1..k+i.
double leading_term(const MFunction& m, std::uint64_t x, std::uint64_t y,
                    double epsilon = kJumpExclusion);

struct RatioCheck {
  ExactInt exact;
  double model = 0;
  double ratio = 0;
};

// S_z(x) / (x log^{z-1} x f(1, z) / Gamma(z)) for z in {1, 2, 3, 4}.
RatioCheck selberg_check(std::uint64_t x, unsigned z,
                         std::uint64_t cutoff = 1'000'000);

// Exponent c in y <= x^{c / log log x} for the small-y regime.
inline constexpr double kSmallYExponent = 1.0;
std::uint64_t small_y_limit(std::uint64_t x);

// S_{-k}(x, y) / (x prod_{p<y} (1 - (k+1)/p)), Case 1 only,
// k + 2 <= y <= small_y_limit(x).
RatioCheck small_y_check(std::uint64_t x, std::uint64_t y, unsigned k);

struct Tolerances {
  double expansion_c = 100.0;  // |S - expansion| <= C x / log^{k+i+1} x
  double approx_c = 100.0;     // |A - expansion| <= C x / log^{k+i+1} x
};

struct Verdict {
  std::string name;
  double value = 0;
  double limit = 0;
  bool pass = false;
};

struct ApproxReport {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned k = 0;
  SumCase sum_case = SumCase::kCase1;
  ScaleParameters scale;
  ExactInt exact;
  std::optional<ContinuousApprox> approx;
  std::optional<Expansion> expansion;
  std::optional<double> leading;
  double constant = 0;
  std::vector<Verdict> verdicts;
};

// Exact sum plus every applicable model. Expansion and approximation are
// included when sqrt(x) <= y < x, the leading term when alpha is clear of
// the jump points.
ApproxReport build_report(const ExactSumSeries& series, const WkSolution& sol, std::uint64_t x,
                          std::uint64_t y, double constant, const Tolerances& tol);

}  // namespace parity_sieve

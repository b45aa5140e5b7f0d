#include "parity_sieve/delay_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parity_sieve/error.hpp"
#include "parity_sieve/euler_constants.hpp"

namespace parity_sieve {
namespace {

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// Position of alpha relative to the nearest integer, in grid units.
bool near_integer(double alpha, double tolerance) {
  return std::fabs(alpha - std::round(alpha)) < tolerance;
}

}  // namespace

SumCase case_of(unsigned k) { return is_case_two(k) ? SumCase::kCase2 : SumCase::kCase1; }

const char* case_label(SumCase c) { return c == SumCase::kCase1 ? "Case 1" : "Case 2"; }

WkSolution::WkSolution(unsigned k, unsigned nodes_per_unit, unsigned units)
    : k_(k), m_(nodes_per_unit), units_(units),
      data_(static_cast<std::size_t>(units) * (nodes_per_unit + 1) * (k + 2), 0.0) {}

double WkSolution::value(unsigned order, double alpha, std::optional<Side> side) const {
  if (order > max_order()) fail(ErrorCode::kBounds, "derivative order exceeds k+1");
  if (!std::isfinite(alpha)) fail(ErrorCode::kRange, "alpha must be finite");
  const double floor_a = std::floor(alpha);
  const bool integer = alpha == floor_a;
  if (alpha < 1.0 || (alpha == 1.0 && side != Side::kRight)) {
    if (alpha == 1.0 && !side) fail(ErrorCode::kAmbiguous, "alpha = 1 is a jump point; pick a side");
    return 0.0;
  }
  if (alpha > alpha_max() || (alpha == alpha_max() && side == Side::kRight))
    fail(ErrorCode::kRange, "alpha beyond the solved range");
  if (integer) {
    if (!side) fail(ErrorCode::kAmbiguous, "integer alpha is a jump point; pick a side");
    const auto u = static_cast<unsigned>(floor_a);
    return *side == Side::kRight ? node(order, u, 0) : node(order, u - 1, m_);
  }
  const auto u = static_cast<unsigned>(floor_a);
  const double pos = (alpha - floor_a) * m_;
  const auto base = static_cast<int>(std::floor(pos));
  if (pos == static_cast<double>(base)) return node(order, u, static_cast<unsigned>(base));
  // Six nodes around pos, clamped to this unit interval.
  const int start = std::clamp(base - 2, 0, static_cast<int>(m_) - 5);
  double result = 0.0;
  for (int i = 0; i < 6; ++i) {
    double weight = 1.0;
    for (int j = 0; j < 6; ++j)
      if (j != i) weight *= (pos - (start + j)) / static_cast<double>(i - j);
    result += weight * node(order, u, static_cast<unsigned>(start + i));
  }
  return result;
}

unsigned nodes_from_step(double step) {
  if (!(step > 0.0)) fail(ErrorCode::kGridAlignment, "step must be positive");
  const double inv = 1.0 / step;
  const double rounded = std::round(inv);
  if (std::fabs(inv - rounded) > 1e-9 * inv || rounded > 1e6)
    fail(ErrorCode::kGridAlignment, "step must be 1/M for an integer M so the delay is M nodes");
  return static_cast<unsigned>(rounded);
}

WkSolution solve_wk(unsigned k, double alpha_max, double step) {
  return solve_wk_nodes(k, alpha_max, nodes_from_step(step));
}

WkSolution solve_wk_nodes(unsigned k, double alpha_max, unsigned M) {
  if (k < 1 || k > kMaxSolverK) fail(ErrorCode::kBounds, "k must lie in [1, 12]");
  if (M < kMinNodesPerUnit)
    fail(ErrorCode::kGridAlignment, "step must be 1/M with M >= 256");
  if (!(alpha_max >= 2.0)) fail(ErrorCode::kDegenerateRange, "alpha_max must be at least 2");
  if (alpha_max > kMaxAlpha) fail(ErrorCode::kBounds, "alpha_max must not exceed 64");

  const auto units = static_cast<unsigned>(std::ceil(alpha_max)) - 1;
  WkSolution sol(k, M, units);
  const double kp1 = static_cast<double>(k) + 1.0;
  const double h = 1.0 / M;

  // (1, 2): w^{(j)}(a) = (k+1) (-1)^j j! / a^{j+1}.
  for (unsigned m = 0; m <= M; ++m) {
    const double a = sol.node_alpha(1, m);
    double v = kp1 / a;
    for (unsigned j = 0; j <= k + 1; ++j) {
      sol.node(j, 1, m) = v;
      v *= -static_cast<double>(j + 1) / a;
    }
  }

  double integral = 0.0;  // int_2^a w(s-1) ds at the start of the unit
  for (unsigned u = 2; u <= units; ++u) {
    // Integrand values w(s-1) on [u, u+1] are the nodes of unit u-1.
    auto f = [&](unsigned m) { return sol.node(0, u - 1, m); };
    double prev_even = integral;
    double running = integral;
    for (unsigned m = 0; m <= M; ++m) {
      if (m == 0) {
        running = integral;
      } else if (m % 2 == 0) {
        // composite Simpson over [m-2, m]
        running = prev_even + h / 3.0 * (f(m - 2) + 4.0 * f(m - 1) + f(m));
      } else if (m == 1) {
        running = prev_even + h / 24.0 * (9.0 * f(0) + 19.0 * f(1) - 5.0 * f(2) + f(3));
      } else if (m == M) {
        running = running + h / 24.0 * (f(M - 3) - 5.0 * f(M - 2) + 19.0 * f(M - 1) + 9.0 * f(M));
      } else {
        // cubic single step from the last even node
        running = prev_even + h / 24.0 * (-f(m - 2) + 13.0 * f(m - 1) + 13.0 * f(m) - f(m + 1));
      }
      if (m % 2 == 0) prev_even = running;
      const double a = sol.node_alpha(u, m);
      sol.node(0, u, m) = kp1 / a * (1.0 + running);
      // a w^{(j+1)} + (j+1) w^{(j)} = (k+1) w^{(j)}(a-1)
      for (unsigned j = 0; j <= k; ++j) {
        sol.node(j + 1, u, m) =
            (kp1 * sol.node(j, u - 1, m) - static_cast<double>(j + 1) * sol.node(j, u, m)) / a;
      }
    }
    integral = running;
  }
  return sol;
}

MFunction::MFunction(const WkSolution& sol, SumCase c, double constant)
    : sol_(&sol), case_(c) {
  if (case_of(sol.k()) != c)
    fail(ErrorCode::kCase, std::string("k = ") + std::to_string(sol.k()) + " is " +
                               case_label(case_of(sol.k())));
  const unsigned k = sol.k();
  order_ = c == SumCase::kCase1 ? k : k + 1;
  scale_ = constant / factorial(order_);
}

double MFunction::operator()(double alpha, std::optional<Side> side) const {
  if (!(alpha > 1.0)) fail(ErrorCode::kRange, "m_{i,k} is evaluated for alpha > 1");
  return scale_ * sol_->value(order_, alpha, side);
}

double m1_eval(const WkSolution& sol, double b_k, double alpha, std::optional<Side> side) {
  return MFunction(sol, SumCase::kCase1, b_k)(alpha, side);
}

double m2_eval(const WkSolution& sol, double c_k, double alpha, std::optional<Side> side) {
  return MFunction(sol, SumCase::kCase2, c_k)(alpha, side);
}

double dde_residual(const WkSolution& sol, SumCase c, double alpha) {
  const double h = sol.step();
  if (near_integer(alpha, 4.0 * h))
    fail(ErrorCode::kProximity, "alpha must stay 4 steps away from integer jump points");
  if (!(alpha - 1.0 > 1.0)) fail(ErrorCode::kRange, "the delay equation is checked for alpha > 2");
  if (alpha + 2.0 * h > sol.alpha_max()) fail(ErrorCode::kRange, "alpha beyond the solved range");
  if (case_of(sol.k()) != c) fail(ErrorCode::kCase, "case does not match k");
  const unsigned i = c == SumCase::kCase1 ? 1 : 2;
  const unsigned order = sol.k() + i - 1;
  auto m = [&](double a) { return sol.value(order, a); };
  const double derivative =
      (m(alpha - 2.0 * h) - 8.0 * m(alpha - h) + 8.0 * m(alpha + h) - m(alpha + 2.0 * h)) /
      (12.0 * h);
  const double kp1 = static_cast<double>(sol.k()) + 1.0;
  return std::fabs(alpha * derivative + (kp1 + (i - 1)) * m(alpha) - kp1 * m(alpha - 1.0));
}

bool LimitEstimate::halves_from(unsigned from_unit) const {
  for (std::size_t u = from_unit; u < oscillations.size(); ++u) {
    const double prev = oscillations[u - 1];
    const double next = oscillations[u];
    if (next <= noise_floor) continue;
    if (!(next <= 0.5 * prev)) return false;
  }
  return true;
}

LimitEstimate limit_estimate(const MFunction& m) {
  const WkSolution& sol = m.solution();
  if (sol.alpha_max() < sol.k() + 6.0)
    fail(ErrorCode::kRange, "limit estimate needs alpha_max >= k + 6");
  const unsigned M = sol.nodes_per_unit();
  LimitEstimate out;
  double peak = 0.0;
  for (unsigned u = 1; u <= sol.units(); ++u) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (unsigned j = 0; j <= M; ++j) {
      const double v = m.scale() * sol.node(m.order(), u, j);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      peak = std::max(peak, std::fabs(v));
    }
    out.oscillations.push_back(hi - lo);
  }
  // Simpson (or trapezoid for odd M) mean over the last unit.
  const unsigned last = sol.units();
  double sum = 0.0;
  if (M % 2 == 0) {
    for (unsigned j = 0; j <= M; ++j) {
      const double w = (j == 0 || j == M) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      sum += w * sol.node(m.order(), last, j);
    }
    sum /= 3.0 * M;
  } else {
    for (unsigned j = 0; j <= M; ++j)
      sum += (j == 0 || j == M ? 0.5 : 1.0) * sol.node(m.order(), last, j);
    sum /= M;
  }
  out.mean = m.scale() * sum;
  out.oscillation = out.oscillations.back();
  out.noise_floor = 1e-12 * peak;
  return out;
}

}  // namespace parity_sieve

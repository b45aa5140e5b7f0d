#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace parity_sieve {

// Case 1: k + 1 composite, m_{1,k}; Case 2: k + 1 prime, m_{2,k}.
enum class SumCase { kCase1 = 1, kCase2 = 2 };

SumCase case_of(unsigned k);
const char* case_label(SumCase c);

// One-sided selector at the integer jump points of w_k^{(j)}.
enum class Side { kLeft, kRight };

// Grid solution of
//   w(a) = 0 (a <= 1),  (k+1)/a (1 < a < 2),
//   w(a) = (k+1)/a (1 + int_2^a w(s-1) ds)  (a > 2),
// together with the derivatives w^{(1)} .. w^{(k+1)}.
//
// Storage is per unit interval [u, u+1], u = 1 .. units(), with M+1 nodes;
// node 0 holds the right limit at u and node M the left limit at u+1.
class WkSolution {
 public:
  WkSolution(unsigned k, unsigned nodes_per_unit, unsigned units);

  unsigned k() const { return k_; }
  unsigned nodes_per_unit() const { return m_; }
  double step() const { return 1.0 / m_; }
  unsigned units() const { return units_; }
  double alpha_max() const { return 1.0 + units_; }
  unsigned max_order() const { return k_ + 1; }

  // w^{(order)}(alpha). Integer alpha > 1 needs a side; alpha <= 1 gives 0
  // (the right limit at 1 is the value on (1, 2)). Off-grid points use local
  // degree-5 Lagrange interpolation inside the unit interval.
  double value(unsigned order, double alpha, std::optional<Side> side = std::nullopt) const;

  // Raw node access: unit interval u (1-based), node offset 0..M.
  double node(unsigned order, unsigned unit, unsigned offset) const {
    return data_[index(order, unit, offset)];
  }
  double& node(unsigned order, unsigned unit, unsigned offset) {
    return data_[index(order, unit, offset)];
  }
  double node_alpha(unsigned unit, unsigned offset) const {
    return static_cast<double>(unit) + static_cast<double>(offset) / m_;
  }

 private:
  std::size_t index(unsigned order, unsigned unit, unsigned offset) const {
    return (static_cast<std::size_t>(unit - 1) * (m_ + 1) + offset) * (k_ + 2) + order;
  }

  unsigned k_;
  unsigned m_;
  unsigned units_;
  std::vector<double> data_;
};

inline constexpr unsigned kMinNodesPerUnit = 256;
inline constexpr double kMaxAlpha = 64.0;
inline constexpr unsigned kMaxSolverK = 12;

// March the system up to alpha_max (rounded up to a whole unit). `step`
// must be 1/M for an integer M >= 256.
WkSolution solve_wk(unsigned k, double alpha_max, double step);
WkSolution solve_wk_nodes(unsigned k, double alpha_max, unsigned nodes_per_unit);

// Converts "1/1024", "0.0009765625" or "1024" style input to M.
unsigned nodes_from_step(double step);

// m_{1,k} = (b_k / k!) w^{(k)}  or  m_{2,k} = (c_k / (k+1)!) w^{(k+1)}.
class MFunction {
 public:
  MFunction(const WkSolution& sol, SumCase c, double constant);

  SumCase sum_case() const { return case_; }
  unsigned order() const { return order_; }
  double scale() const { return scale_; }
  const WkSolution& solution() const { return *sol_; }

  double operator()(double alpha, std::optional<Side> side = std::nullopt) const;

 private:
  const WkSolution* sol_;
  SumCase case_;
  unsigned order_;
  double scale_;
};

double m1_eval(const WkSolution& sol, double b_k, double alpha,
               std::optional<Side> side = std::nullopt);
double m2_eval(const WkSolution& sol, double c_k, double alpha,
               std::optional<Side> side = std::nullopt);

// |a m'(a) + (k+i) m(a) - (k+1) m(a-1)| for the normalized column
// w^{(k+i-1)}, i = 1, 2. m' uses the fourth-order centered difference with
// h = step, so alpha must stay 4 steps away from any integer.
double dde_residual(const WkSolution& sol, SumCase c, double alpha);

struct LimitEstimate {
  double mean = 0;         // mean of m over the last unit interval
  double oscillation = 0;  // max - min over the last unit interval
  // oscillations[u - 1] = max - min of m over [u, u+1].
  std::vector<double> oscillations;
  double noise_floor = 0;  // oscillations below this are treated as converged

  // Every successive unit interval from `from_unit` on at least halves the
  // oscillation, or is already below the noise floor.
  bool halves_from(unsigned from_unit) const;
};

LimitEstimate limit_estimate(const MFunction& m);

}  // namespace parity_sieve

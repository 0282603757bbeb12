#pragma once

#include <limits>
#include <vector>

namespace camplan {

/// maximize objective . x
/// subject to  ineq_lhs[i] . x <= ineq_rhs[i]
///             eq_lhs[i]   . x  = eq_rhs[i]
///             lower[j] <= x[j] <= upper[j]
///
/// Lower bounds must be finite (default 0); upper bounds may be +infinity.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> ineq_lhs;
  std::vector<double> ineq_rhs;
  std::vector<std::vector<double>> eq_lhs;
  std::vector<double> eq_rhs;
  std::vector<double> lower;  // empty means all 0
  std::vector<double> upper;  // empty means all +infinity

  static constexpr double kInf = std::numeric_limits<double>::infinity();
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;  // empty unless optimal
  double value = 0.0;
};

/// Dense two-phase primal simplex over doubles with Bland's smallest-index
/// pivoting rule, which makes the pivot sequence deterministic and cycling
/// impossible. Feasibility tolerance 1e-9. Infeasible and unbounded
/// problems are reported as distinct statuses, never as garbage solutions.
/// Throws std::invalid_argument on malformed input (dimension mismatches,
/// non-finite coefficients, infinite lower bounds, upper < lower).
LpResult solve_lp(const LpProblem& problem);

}  // namespace camplan

#include "camplan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "camplan/errors.hpp"

namespace camplan {

namespace {

constexpr double kTol = 1e-9;        // reduced-cost / ratio-test tolerance
constexpr double kPivotTol = 1e-9;   // minimum magnitude of a pivot element
constexpr double kFeasTol = 1e-7;    // residual artificial mass => infeasible

enum class RowKind { le, ge, eq };

struct Row {
  std::vector<double> a;
  double b = 0.0;
  RowKind kind = RowKind::le;
};

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string("lp: non-finite value in ") + what);
    }
  }
}

void validate(const LpProblem& p) {
  const std::size_t n = p.objective.size();
  if (n == 0) throw std::invalid_argument("lp: empty objective");
  check_finite(p.objective, "objective");
  if (p.ineq_lhs.size() != p.ineq_rhs.size()) {
    throw std::invalid_argument("lp: ineq_lhs / ineq_rhs size mismatch");
  }
  if (p.eq_lhs.size() != p.eq_rhs.size()) {
    throw std::invalid_argument("lp: eq_lhs / eq_rhs size mismatch");
  }
  for (const auto& r : p.ineq_lhs) {
    if (r.size() != n) throw std::invalid_argument("lp: inequality row arity mismatch");
    check_finite(r, "ineq_lhs");
  }
  for (const auto& r : p.eq_lhs) {
    if (r.size() != n) throw std::invalid_argument("lp: equality row arity mismatch");
    check_finite(r, "eq_lhs");
  }
  check_finite(p.ineq_rhs, "ineq_rhs");
  check_finite(p.eq_rhs, "eq_rhs");
  if (!p.lower.empty() && p.lower.size() != n) {
    throw std::invalid_argument("lp: lower bound arity mismatch");
  }
  if (!p.upper.empty() && p.upper.size() != n) {
    throw std::invalid_argument("lp: upper bound arity mismatch");
  }
  for (std::size_t j = 0; j < p.lower.size(); ++j) {
    if (!std::isfinite(p.lower[j])) {
      throw std::invalid_argument("lp: lower bounds must be finite");
    }
  }
  for (std::size_t j = 0; j < p.upper.size(); ++j) {
    const double lo = p.lower.empty() ? 0.0 : p.lower[j];
    if (std::isnan(p.upper[j]) || p.upper[j] < lo) {
      throw std::invalid_argument("lp: upper bound below lower bound");
    }
  }
}

/// Dense simplex tableau.
///
/// Column layout: [structural 0..n) | slack/surplus | artificial | rhs].
/// Row `m` holds the objective in the "z - c.x = 0" form: entry j is the
/// current reduced cost with sign such that a column may enter the basis
/// while its entry is < -kTol, and the rhs cell equals the current
/// objective value of the (maximized) phase objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols_total)
      : m_(rows), cols_(cols_total), t_(rows + 1, std::vector<double>(cols_total + 1, 0.0)),
        basis_(rows, 0) {}

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i][j]; }
  double& rhs(std::size_t i) { return t_[i][cols_]; }
  double rhs(std::size_t i) const { return t_[i][cols_]; }
  double& obj(std::size_t j) { return t_[m_][j]; }
  double obj(std::size_t j) const { return t_[m_][j]; }
  double& obj_rhs() { return t_[m_][cols_]; }
  double obj_rhs() const { return t_[m_][cols_]; }
  int& basis(std::size_t i) { return basis_[i]; }
  int basis(std::size_t i) const { return basis_[i]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = t_[pr][pc];
    std::vector<double>& prow = t_[pr];
    const double inv = 1.0 / piv;
    for (double& v : prow) v *= inv;
    prow[pc] = 1.0;  // kill residual rounding on the pivot itself
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      const double f = t_[i][pc];
      if (f == 0.0) continue;
      std::vector<double>& row = t_[i];
      for (std::size_t j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    basis_[pr] = static_cast<int>(pc);
  }

  void erase_row(std::size_t i) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

/// Runs Bland-rule simplex iterations on the current objective row until no
/// column may enter. `allowed_cols` caps the columns eligible to enter
/// (used to ban artificial columns during phase two). Returns false when an
/// entering column has no positive ratio row, i.e. the LP is unbounded.
bool iterate(Tableau& t, std::size_t allowed_cols) {
  const std::size_t max_iter = 200000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Entering column: smallest index whose reduced cost is negative.
    std::size_t enter = allowed_cols;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      if (t.obj(j) < -kTol) {
        enter = j;
        break;
      }
    }
    if (enter == allowed_cols) return true;  // optimal for this phase

    // Leaving row: minimum ratio; ties broken by smallest basic variable
    // index (the second half of Bland's rule).
    std::size_t leave = t.rows();
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double coef = t.at(i, enter);
      if (coef <= kPivotTol) continue;
      const double ratio = t.rhs(i) / coef;
      if (leave == t.rows() || ratio < best_ratio - kTol ||
          (ratio < best_ratio + kTol && t.basis(i) < t.basis(leave))) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == t.rows()) return false;  // unbounded direction
    t.pivot(leave, enter);
  }
  throw SolverError("lp: simplex iteration limit exceeded");
}

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  validate(problem);
  const std::size_t n = problem.objective.size();
  const std::vector<double> lower =
      problem.lower.empty() ? std::vector<double>(n, 0.0) : problem.lower;

  // Shift variables so that y = x - lower >= 0.
  std::vector<Row> rows;
  rows.reserve(problem.ineq_lhs.size() + problem.eq_lhs.size() + n);
  for (std::size_t i = 0; i < problem.ineq_lhs.size(); ++i) {
    Row r;
    r.a = problem.ineq_lhs[i];
    r.b = problem.ineq_rhs[i];
    for (std::size_t j = 0; j < n; ++j) r.b -= r.a[j] * lower[j];
    r.kind = RowKind::le;
    rows.push_back(std::move(r));
  }
  if (!problem.upper.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(problem.upper[j])) continue;
      Row r;
      r.a.assign(n, 0.0);
      r.a[j] = 1.0;
      r.b = problem.upper[j] - lower[j];
      r.kind = RowKind::le;
      rows.push_back(std::move(r));
    }
  }
  for (std::size_t i = 0; i < problem.eq_lhs.size(); ++i) {
    Row r;
    r.a = problem.eq_lhs[i];
    r.b = problem.eq_rhs[i];
    for (std::size_t j = 0; j < n; ++j) r.b -= r.a[j] * lower[j];
    r.kind = RowKind::eq;
    rows.push_back(std::move(r));
  }

  // Normalise every right-hand side to be non-negative.
  for (Row& r : rows) {
    if (r.b < 0.0) {
      for (double& a : r.a) a = -a;
      r.b = -r.b;
      if (r.kind == RowKind::le) {
        r.kind = RowKind::ge;
      } else if (r.kind == RowKind::ge) {
        r.kind = RowKind::le;
      }
    }
  }

  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const Row& r : rows) {
    if (r.kind != RowKind::eq) ++n_slack;
    if (r.kind != RowKind::le) ++n_art;
  }

  const std::size_t slack0 = n;
  const std::size_t art0 = n + n_slack;
  const std::size_t total = n + n_slack + n_art;
  Tableau t(m, total);

  std::size_t next_slack = slack0;
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = r.a[j];
    t.rhs(i) = r.b;
    if (r.kind == RowKind::le) {
      t.at(i, next_slack) = 1.0;
      t.basis(i) = static_cast<int>(next_slack++);
    } else if (r.kind == RowKind::ge) {
      t.at(i, next_slack++) = -1.0;  // surplus
      t.at(i, next_art) = 1.0;
      t.basis(i) = static_cast<int>(next_art++);
    } else {
      t.at(i, next_art) = 1.0;
      t.basis(i) = static_cast<int>(next_art++);
    }
  }

  LpResult result;

  // Phase one: maximize -sum(artificials). The objective row starts as +1
  // on each artificial column, then is adjusted so that every basic column
  // has a zero reduced cost.
  if (n_art > 0) {
    for (std::size_t j = art0; j < total; ++j) t.obj(j) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t b = static_cast<std::size_t>(t.basis(i));
      if (b >= art0) {
        for (std::size_t j = 0; j <= total; ++j) t.obj(j) -= t.at(i, j);
      }
    }
    if (!iterate(t, total)) {
      throw SolverError("lp: phase one reported unbounded");
    }
    if (t.obj_rhs() < -kFeasTol) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive any artificial still basic (at level ~0) out of the basis, or
    // drop its row entirely when the row has no usable pivot (a redundant
    // constraint).
    for (std::size_t i = 0; i < t.rows();) {
      if (static_cast<std::size_t>(t.basis(i)) < art0) {
        ++i;
        continue;
      }
      std::size_t pc = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > kFeasTol) {
          pc = j;
          break;
        }
      }
      if (pc < art0) {
        t.pivot(i, pc);
        ++i;
      } else {
        t.erase_row(i);
      }
    }
  }

  // Phase two: maximize the true objective over structural + slack columns
  // only; artificial columns are never allowed back into the basis.
  for (std::size_t j = 0; j <= total; ++j) t.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = -problem.objective[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const std::size_t b = static_cast<std::size_t>(t.basis(i));
    const double f = t.obj(b);
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= total; ++j) t.obj(j) -= f * t.at(i, j);
  }
  if (!iterate(t, art0)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const std::size_t b = static_cast<std::size_t>(t.basis(i));
    if (b < n) y[b] = t.rhs(i);
  }
  result.status = LpStatus::optimal;
  result.x.resize(n);
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = y[j] + lower[j];
    value += problem.objective[j] * result.x[j];
  }
  result.value = value;
  return result;
}

}  // namespace camplan

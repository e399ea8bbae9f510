#include <algorithm>
#include <cmath>
#include <limits>

#include "epb/error.hpp"
#include "epb/solvers.hpp"

namespace epb {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr std::size_t kMaxPivots = 200000;

// Dense tableau. Row `objective_row` holds reduced costs d_j = c_j - c_B B^-1 a_j
// with the negated objective value in the rhs column.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }
  double at(std::size_t r, std::size_t c) const { return t_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }
  double& rhs(std::size_t r) { return at(r, cols()); }
  double rhs(std::size_t r) const { return at(r, cols()); }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(t_.cols()) - 1; }
  std::size_t objective_row() const { return rows(); }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const auto ri = static_cast<Eigen::Index>(r);
    const auto ci = static_cast<Eigen::Index>(c);
    t_.row(ri) /= t_(ri, ci);
    t_(ri, ci) = 1.0;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == ri) continue;
      const double f = t_(i, ci);
      if (f != 0.0) {
        t_.row(i) -= f * t_.row(ri);
        t_(i, ci) = 0.0;
      }
    }
    basis_[r] = c;
  }

  void set_costs(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols(); ++j) at(objective_row(), j) = j < cols() ? cost[j] : 0.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols(); ++j) at(objective_row(), j) -= cb * at(r, j);
    }
  }

  // Maximizes the installed costs over columns with allowed[j]. Bland's rule:
  // lowest-index improving column enters; ties in the ratio test go to the
  // lowest-index basic variable. Returns false on hitting the pivot cap.
  bool optimize(const std::vector<char>& allowed, std::size_t& pivots) {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (allowed[j] && at(objective_row(), j) > kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == cols()) return true;
      std::size_t leave = rows();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows(); ++r) {
        const double a = at(r, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      // Box rows keep every structural column bounded, so an unbounded
      // direction means the tableau has lost accuracy.
      if (leave == rows()) return false;
      pivot(leave, enter);
      if (++pivots > kMaxPivots) return false;
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpReport solve_lp(const LinearProgram& lp) {
  const auto n = static_cast<std::size_t>(lp.objective.size());
  const auto m = static_cast<std::size_t>(lp.constraints.rows());
  if ((m > 0 && static_cast<std::size_t>(lp.constraints.cols()) != n) ||
      static_cast<std::size_t>(lp.rhs.size()) != m) {
    throw Error(ErrorCode::kLengthMismatch, "linear program dimensions are inconsistent");
  }
  if (!lp.objective.allFinite() || !lp.constraints.allFinite() || !lp.rhs.allFinite()) {
    throw Error(ErrorCode::kNumericalFailure, "linear program has non-finite entries");
  }

  // Rows: A x + s = b, then x + s = 1. Columns: x, slacks, artificials.
  const std::size_t rows = m + n;
  Eigen::MatrixXd full_a(rows, n);
  Eigen::VectorXd full_b(rows);
  if (m > 0) full_a.topRows(m) = lp.constraints;
  full_a.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  if (m > 0) full_b.head(m) = lp.rhs;
  full_b.tail(n).setOnes();

  std::vector<std::size_t> negative_rows;
  for (std::size_t r = 0; r < rows; ++r) {
    if (full_b(static_cast<Eigen::Index>(r)) < 0.0) negative_rows.push_back(r);
  }
  const std::size_t slack0 = n;
  const std::size_t art0 = n + rows;
  const std::size_t cols = art0 + negative_rows.size();

  Tableau tab(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = full_a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    tab.at(r, slack0 + r) = 1.0;
    tab.rhs(r) = full_b(static_cast<Eigen::Index>(r));
    tab.basis()[r] = slack0 + r;
  }
  // An artificial column -e_r; negating the row makes it the basic unit column.
  for (std::size_t k = 0; k < negative_rows.size(); ++k) {
    const std::size_t r = negative_rows[k];
    for (std::size_t j = 0; j <= cols; ++j) tab.at(r, j) = -tab.at(r, j);
    tab.at(r, art0 + k) = 1.0;
    tab.basis()[r] = art0 + k;
  }

  LpReport report;
  std::size_t pivots = 0;
  std::vector<char> allowed(cols, 1);

  if (!negative_rows.empty()) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1.0;
    tab.set_costs(phase1);
    if (!tab.optimize(allowed, pivots)) {
      report.message = "phase 1 did not terminate";
      report.iterations = pivots;
      return report;
    }
    // Objective rhs holds -(phase-1 value); a positive sum of artificials means infeasible.
    if (tab.rhs(tab.objective_row()) > 1e-9) {
      report.status = SolveStatus::kInfeasible;
      report.iterations = pivots;
      report.message = "no point satisfies A x <= b with 0 <= x <= 1";
      return report;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab.basis()[r] < art0) continue;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(tab.at(r, j)) > kPivotEps) {
          tab.pivot(r, j);
          ++pivots;
          break;
        }
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = 0;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective(static_cast<Eigen::Index>(j));
  tab.set_costs(cost);
  if (!tab.optimize(allowed, pivots)) {
    report.message = "phase 2 did not terminate";
    report.iterations = pivots;
    return report;
  }

  report.iterations = pivots;
  report.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < rows; ++r) {
    if (tab.basis()[r] < n) report.x(static_cast<Eigen::Index>(tab.basis()[r])) = tab.rhs(r);
  }
  report.dual = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
  for (std::size_t s = 0; s < rows; ++s) {
    double y = 0.0;
    for (std::size_t r = 0; r < rows; ++r) y += cost[tab.basis()[r]] * tab.at(r, slack0 + s);
    report.dual(static_cast<Eigen::Index>(s)) = y;
  }
  report.value = lp.objective.dot(report.x);
  report.dual_value = full_b.dot(report.dual);

  const Eigen::VectorXd slack = full_b - full_a * report.x;
  report.primal_residual = std::max({0.0, -slack.minCoeff(), -report.x.minCoeff()});
  const Eigen::VectorXd reduced = full_a.transpose() * report.dual - lp.objective;
  report.dual_residual = std::max({0.0, -report.dual.minCoeff(), n > 0 ? -reduced.minCoeff() : 0.0});

  const double gap = std::abs(report.dual_value - report.value);
  if (report.primal_residual <= kLpTolerance && report.dual_residual <= kLpTolerance &&
      gap <= kLpTolerance * (1.0 + std::abs(report.value))) {
    report.status = SolveStatus::kOptimal;
  } else {
    report.message = "optimality check failed (primal " + std::to_string(report.primal_residual) + ", dual " +
                     std::to_string(report.dual_residual) + ", gap " + std::to_string(gap) + ")";
  }
  return report;
}

}  // namespace epb

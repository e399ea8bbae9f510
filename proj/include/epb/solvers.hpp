#pragma once

// Small dense LP and SDP solvers used by the bound computations.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace epb {

enum class SolveStatus { kOptimal, kInfeasible, kNumericalFailure };
const char* to_string(SolveStatus status);

// maximize c.x  subject to  A x <= b,  0 <= x <= 1.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd constraints;  // rows x variables; may have zero rows
  Eigen::VectorXd rhs;
};

struct LpReport {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double value = 0.0;
  Eigen::VectorXd x;
  // Multipliers for the A rows followed by the x <= 1 rows. At an optimum
  // they are >= 0 and [A; I]^T y >= c.
  Eigen::VectorXd dual;
  double dual_value = 0.0;
  std::size_t iterations = 0;
  double primal_residual = 0.0;  // max violation of A x <= b and the box
  double dual_residual = 0.0;    // max violation of dual feasibility
  std::string message;
};

inline constexpr double kLpTolerance = 1e-9;

// Two-phase dense tableau simplex with Bland's rule.
LpReport solve_lp(const LinearProgram& lp);

// Symmetric constraint matrix as upper-triangular triplets; an off-diagonal
// entry (i, j, v) stands for both A_ij = A_ji = v.
struct SymmetricEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

struct SparseSymmetric {
  std::vector<SymmetricEntry> entries;
  double inner(const Eigen::MatrixXd& x) const;  // <A, X>
  Eigen::MatrixXd dense(std::size_t n) const;
};

// maximize <C, X>  subject to  <A_k, X> = b_k,  X positive semidefinite.
struct SemidefiniteProgram {
  Eigen::MatrixXd objective;
  std::vector<SparseSymmetric> constraints;
  Eigen::VectorXd rhs;
};

struct SdpOptions {
  double tolerance = 1e-9;  // relative gap and scaled feasibility residuals
  // When the iteration stalls numerically, an iterate meeting this looser
  // tolerance is still reported as optimal.
  double acceptable_tolerance = 1e-7;
  std::size_t max_iterations = 200;
};

struct SdpReport {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double value = 0.0;       // <C, X>
  double dual_value = 0.0;  // b.y
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd z;  // sum_k y_k A_k - C
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  std::string message;
};

inline constexpr std::size_t kMaxSdpDimension = 64;

// Infeasible-start primal-dual path following with the HKM search direction
// and a Mehrotra-style centering parameter.
SdpReport solve_sdp(const SemidefiniteProgram& sdp, const SdpOptions& options = {});

double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace epb

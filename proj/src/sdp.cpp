#include <algorithm>
#include <cmath>
#include <limits>

#include "epb/error.hpp"
#include "epb/solvers.hpp"

namespace epb {

double SparseSymmetric::inner(const Eigen::MatrixXd& x) const {
  double s = 0.0;
  for (const auto& e : entries) {
    const auto i = static_cast<Eigen::Index>(e.row);
    const auto j = static_cast<Eigen::Index>(e.col);
    s += (i == j) ? e.value * x(i, j) : e.value * (x(i, j) + x(j, i));
  }
  return s;
}

Eigen::MatrixXd SparseSymmetric::dense(std::size_t n) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : entries) {
    const auto i = static_cast<Eigen::Index>(e.row);
    const auto j = static_cast<Eigen::Index>(e.col);
    a(i, j) += e.value;
    if (i != j) a(j, i) += e.value;
  }
  return a;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

struct Triplet {
  Eigen::Index row;
  Eigen::Index col;
  double value;
};

// Full (both triangles) entry lists.
std::vector<std::vector<Triplet>> expand(const std::vector<SparseSymmetric>& constraints) {
  std::vector<std::vector<Triplet>> out;
  out.reserve(constraints.size());
  for (const auto& a : constraints) {
    std::vector<Triplet> t;
    for (const auto& e : a.entries) {
      const auto i = static_cast<Eigen::Index>(e.row);
      const auto j = static_cast<Eigen::Index>(e.col);
      t.push_back({i, j, e.value});
      if (i != j) t.push_back({j, i, e.value});
    }
    out.push_back(std::move(t));
  }
  return out;
}

Eigen::VectorXd apply_constraints(const std::vector<std::vector<Triplet>>& a, const Eigen::MatrixXd& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) {
    double s = 0.0;
    for (const auto& t : a[k]) s += t.value * x(t.row, t.col);
    out(static_cast<Eigen::Index>(k)) = s;
  }
  return out;
}

Eigen::MatrixXd adjoint(const std::vector<std::vector<Triplet>>& a, const Eigen::VectorXd& y, Eigen::Index n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double yk = y(static_cast<Eigen::Index>(k));
    for (const auto& t : a[k]) out(t.row, t.col) += yk * t.value;
  }
  return out;
}

double frobenius(const std::vector<Triplet>& a) {
  double s = 0.0;
  for (const auto& t : a) s += t.value * t.value;
  return std::sqrt(s);
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest step in (0, inf] keeping m + step * dm positive semidefinite, given
// the Cholesky factor of m.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::MatrixXd& dm) {
  const Eigen::MatrixXd& l = chol.matrixL();
  Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(dm);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
  const double lambda = min_eigenvalue(w);
  return lambda < 0.0 ? -1.0 / lambda : std::numeric_limits<double>::infinity();
}

}  // namespace

SdpReport solve_sdp(const SemidefiniteProgram& sdp, const SdpOptions& options) {
  const Eigen::Index n = sdp.objective.rows();
  const auto m = static_cast<Eigen::Index>(sdp.constraints.size());
  if (sdp.objective.cols() != n || sdp.rhs.size() != m) {
    throw Error(ErrorCode::kLengthMismatch, "semidefinite program dimensions are inconsistent");
  }
  if (static_cast<std::size_t>(n) > kMaxSdpDimension) {
    throw Error(ErrorCode::kTooLarge, "SDP dimension exceeds " + std::to_string(kMaxSdpDimension));
  }
  if (!sdp.objective.isApprox(sdp.objective.transpose(), 1e-12) && n > 0) {
    throw Error(ErrorCode::kNumericalFailure, "SDP objective is not symmetric");
  }
  for (const auto& a : sdp.constraints) {
    for (const auto& e : a.entries) {
      if (e.row >= static_cast<std::size_t>(n) || e.col >= static_cast<std::size_t>(n) || !std::isfinite(e.value)) {
        throw Error(ErrorCode::kNumericalFailure, "SDP constraint entry out of range or not finite");
      }
    }
  }

  SdpReport report;
  if (n == 0) {
    report.status = SolveStatus::kOptimal;
    return report;
  }

  const auto a = expand(sdp.constraints);
  const Eigen::MatrixXd& c = sdp.objective;
  const Eigen::VectorXd& b = sdp.rhs;
  const double norm_b = b.norm();
  const double norm_c = c.norm();
  const double dn = static_cast<double>(n);

  double xi = std::max(10.0, std::sqrt(dn));
  double eta = std::max({10.0, std::sqrt(dn), norm_c});
  for (Eigen::Index k = 0; k < m; ++k) {
    const double fa = frobenius(a[static_cast<std::size_t>(k)]);
    xi = std::max(xi, dn * (1.0 + std::abs(b(k))) / (1.0 + fa));
    eta = std::max(eta, fa);
  }
  Eigen::MatrixXd x = xi * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd z = eta * Eigen::MatrixXd::Identity(n, n);

  auto evaluate = [&]() {
    const Eigen::VectorXd rp = b - apply_constraints(a, x);
    const Eigen::MatrixXd rd = adjoint(a, y, n) - z - c;
    report.value = (c.array() * x.array()).sum();
    report.dual_value = b.dot(y);
    report.primal_residual = rp.norm() / (1.0 + norm_b);
    report.dual_residual = rd.norm() / (1.0 + norm_c);
    report.gap = std::abs(report.value - report.dual_value) / (1.0 + std::abs(report.value) + std::abs(report.dual_value));
    return std::make_pair(rp, rd);
  };

  auto finish = [&](SolveStatus status, std::string message) {
    if (status == SolveStatus::kNumericalFailure && report.primal_residual <= options.acceptable_tolerance &&
        report.dual_residual <= options.acceptable_tolerance && report.gap <= options.acceptable_tolerance) {
      status = SolveStatus::kOptimal;
      message = "converged to reduced accuracy (" + message + ")";
    }
    report.status = status;
    report.message = std::move(message);
    report.x = x;
    report.y = y;
    report.z = z;
    return report;
  };

  for (std::size_t iter = 0;; ++iter) {
    report.iterations = iter;
    const auto [rp, rd] = evaluate();
    if (report.primal_residual <= options.tolerance && report.dual_residual <= options.tolerance &&
        report.gap <= options.tolerance) {
      return finish(SolveStatus::kOptimal, "converged");
    }
    if (iter >= options.max_iterations) {
      return finish(SolveStatus::kNumericalFailure, "iteration limit reached");
    }

    Eigen::LLT<Eigen::MatrixXd> chol_x(x);
    Eigen::LLT<Eigen::MatrixXd> chol_z(z);
    if (chol_x.info() != Eigen::Success || chol_z.info() != Eigen::Success) {
      return finish(SolveStatus::kNumericalFailure, "iterate lost positive definiteness");
    }
    const Eigen::MatrixXd zinv = sym(chol_z.solve(Eigen::MatrixXd::Identity(n, n)));
    const double mu = (x.array() * z.array()).sum() / dn;

    // Schur complement M_kl = <A_k, X A_l Z^-1>.
    Eigen::MatrixXd schur(m, m);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index l = 0; l < m; ++l) {
      g.setZero();
      for (const auto& t : a[static_cast<std::size_t>(l)]) {
        g.noalias() += t.value * x.col(t.row) * zinv.row(t.col);
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& t : a[static_cast<std::size_t>(k)]) s += t.value * g(t.row, t.col);
        schur(k, l) = s;
      }
    }
    schur = sym(schur);
    Eigen::LDLT<Eigen::MatrixXd> schur_factor(schur);
    if (schur_factor.info() != Eigen::Success) {
      const double shift = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur_factor.compute(schur + shift * Eigen::MatrixXd::Identity(m, m));
    }
    if (schur_factor.info() != Eigen::Success) {
      return finish(SolveStatus::kNumericalFailure, "Schur complement factorization failed");
    }

    const Eigen::MatrixXd x_rd_zinv = x * rd * zinv;
    auto direction = [&](const Eigen::MatrixXd& target) {
      // target is the complementarity right-hand side R with dX = R - X dZ Z^-1.
      const Eigen::VectorXd rhs = apply_constraints(a, target - x_rd_zinv) - rp;
      Eigen::VectorXd dy = schur_factor.solve(rhs);
      Eigen::MatrixXd dz = sym(rd + adjoint(a, dy, n));
      Eigen::MatrixXd dx = sym(target - x * dz * zinv);
      return std::make_tuple(std::move(dx), std::move(dy), std::move(dz));
    };
    auto steps = [&](const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dz) {
      return std::make_pair(max_step(chol_x, dx), max_step(chol_z, dz));
    };

    // Predictor: pure Newton step toward mu = 0.
    auto [dx_a, dy_a, dz_a] = direction(-x);
    const auto [ap_a, ad_a] = steps(dx_a, dz_a);
    const double mu_aff = ((x + std::min(1.0, ap_a) * dx_a).array() * (z + std::min(1.0, ad_a) * dz_a).array()).sum() / dn;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    auto [dx, dy, dz] = direction(sigma * mu * zinv - x - dx_a * dz_a * zinv);
    if (!dx.allFinite() || !dy.allFinite() || !dz.allFinite()) {
      return finish(SolveStatus::kNumericalFailure, "search direction is not finite");
    }
    const auto [ap_max, ad_max] = steps(dx, dz);
    const double gamma = 0.98;
    const double ap = std::min(1.0, gamma * ap_max);
    const double ad = std::min(1.0, gamma * ad_max);
    if (ap < 1e-12 && ad < 1e-12) {
      return finish(SolveStatus::kNumericalFailure, "step length collapsed");
    }
    x = sym(x + ap * dx);
    y += ad * dy;
    z = sym(z + ad * dz);
  }
}

}  // namespace epb

#include "epb/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "epb/json_io.hpp"

namespace epb {

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::kLocalRealistic: return "lr";
    case BoundMethod::kFractionalPacking: return "fractional-packing";
    case BoundMethod::kTheta: return "theta";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Independence number

namespace {

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const WeightedGraph& g) : g_(g), adj_(g.size(), 0) {
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      total += g.weight(i);
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.adjacent(i, j)) adj_[i] |= std::uint64_t{1} << j;
      }
    }
    eps_ = 1e-12 * (1.0 + total);
  }

  std::uint64_t run() {
    const std::uint64_t all = g_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g_.size()) - 1;
    search(all, 0, 0.0);
    return best_set_;
  }

 private:
  // Greedy partition of `cand` into cliques; an independent set takes at most
  // one vertex per clique, so the heaviest vertex of each bounds its share.
  double clique_cover_bound(std::uint64_t cand) const {
    double bound = 0.0;
    while (cand) {
      std::uint64_t members = cand;
      std::uint64_t clique = 0;
      double heaviest = 0.0;
      while (members) {
        const int v = std::countr_zero(members);
        clique |= std::uint64_t{1} << v;
        heaviest = std::max(heaviest, g_.weight(static_cast<std::size_t>(v)));
        members &= adj_[static_cast<std::size_t>(v)];
      }
      bound += heaviest;
      cand &= ~clique;
    }
    return bound;
  }

  void search(std::uint64_t cand, std::uint64_t current, double weight) {
    if (cand == 0) {
      if (weight > best_weight_ + eps_) {
        best_weight_ = weight;
        best_set_ = current;
      }
      return;
    }
    if (weight + clique_cover_bound(cand) <= best_weight_ + eps_) return;
    const int v = std::countr_zero(cand);
    const std::uint64_t vb = std::uint64_t{1} << v;
    search(cand & ~vb & ~adj_[static_cast<std::size_t>(v)], current | vb, weight + g_.weight(static_cast<std::size_t>(v)));
    search(cand & ~vb, current, weight);
  }

  const WeightedGraph& g_;
  std::vector<std::uint64_t> adj_;
  double eps_ = 0.0;
  double best_weight_ = -1.0;
  std::uint64_t best_set_ = 0;
};

}  // namespace

BoundReport independence_number(const WeightedGraph& g) {
  if (g.size() > kMaxIndependenceVertices) {
    throw Error(ErrorCode::kTooLarge, "independence number limited to " + std::to_string(kMaxIndependenceVertices) +
                                          " vertices, got " + std::to_string(g.size()));
  }
  const std::uint64_t set = IndependentSetSearch(g).run();
  IndependentSetCertificate cert;
  double value = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((set >> i) & 1U) {
      cert.vertices.push_back(i);
      value += g.weight(i);
    }
  }
  BoundReport report;
  report.method = BoundMethod::kLocalRealistic;
  report.value = value;
  report.certificate = std::move(cert);
  report.fingerprint = graph_fingerprint(g);
  return report;
}

// ---------------------------------------------------------------------------
// Maximal cliques

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  Bitset minus(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
    return r;
  }
  Bitset operator|(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] |= o.words_[k];
    return r;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class CliqueEnumerator {
 public:
  CliqueEnumerator(const WeightedGraph& g, std::size_t limit) : n_(g.size()), limit_(limit), adj_(n_, Bitset(n_)) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (g.adjacent(i, j)) adj_[i].set(j);
      }
    }
  }

  std::vector<std::vector<std::size_t>> run() {
    Bitset p(n_);
    for (std::size_t i = 0; i < n_; ++i) p.set(i);
    std::vector<std::size_t> r;
    expand(r, p, Bitset(n_));
    for (auto& c : cliques_) std::sort(c.begin(), c.end());
    std::sort(cliques_.begin(), cliques_.end());
    return std::move(cliques_);
  }

 private:
  void expand(std::vector<std::size_t>& r, Bitset p, Bitset x) {
    if (p.none() && x.none()) {
      if (cliques_.size() >= limit_) {
        throw Error(ErrorCode::kCliqueExplosion,
                    "more than " + std::to_string(limit_) + " maximal cliques");
      }
      cliques_.push_back(r);
      return;
    }
    // Pivot: the vertex of P u X with the most neighbours in P.
    std::size_t pivot = n_;
    std::size_t best = 0;
    (p | x).for_each([&](std::size_t u) {
      const std::size_t c = (p & adj_[u]).count();
      if (pivot == n_ || c > best) {
        pivot = u;
        best = c;
      }
    });
    const Bitset candidates = p.minus(adj_[pivot]);
    candidates.for_each([&](std::size_t v) {
      r.push_back(v);
      expand(r, p & adj_[v], x & adj_[v]);
      r.pop_back();
      p.reset(v);
      x.set(v);
    });
  }

  std::size_t n_;
  std::size_t limit_;
  std::vector<Bitset> adj_;
  std::vector<std::vector<std::size_t>> cliques_;
};

}  // namespace

std::vector<std::vector<std::size_t>> maximal_cliques(const WeightedGraph& g, std::size_t limit) {
  if (g.size() == 0) return {};
  return CliqueEnumerator(g, limit).run();
}

// ---------------------------------------------------------------------------
// Fractional packing

BoundReport fractional_packing(const WeightedGraph& g) {
  if (g.size() > kMaxPackingVertices) {
    throw Error(ErrorCode::kTooLarge, "fractional packing limited to " + std::to_string(kMaxPackingVertices) +
                                          " vertices, got " + std::to_string(g.size()));
  }
  const auto cliques = maximal_cliques(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto m = static_cast<Eigen::Index>(cliques.size());

  LinearProgram lp;
  lp.objective = Eigen::Map<const Eigen::VectorXd>(g.weights().data(), n);
  lp.constraints = Eigen::MatrixXd::Zero(m, n);
  lp.rhs = Eigen::VectorXd::Ones(m);
  for (Eigen::Index q = 0; q < m; ++q) {
    for (std::size_t v : cliques[static_cast<std::size_t>(q)]) lp.constraints(q, static_cast<Eigen::Index>(v)) = 1.0;
  }
  const LpReport lp_report = solve_lp(lp);
  if (lp_report.status != SolveStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "fractional packing LP: " + lp_report.message);
  }

  PackingCertificate cert;
  cert.assignment.assign(lp_report.x.data(), lp_report.x.data() + n);
  cert.cliques = cliques;
  cert.clique_multipliers.assign(lp_report.dual.data(), lp_report.dual.data() + m);
  cert.box_multipliers.assign(lp_report.dual.data() + m, lp_report.dual.data() + m + n);

  BoundReport report;
  report.method = BoundMethod::kFractionalPacking;
  report.value = lp_report.value;
  report.certificate = std::move(cert);
  report.fingerprint = graph_fingerprint(g);
  report.note = "LP optimum over maximal-clique constraints; derived value";
  return report;
}

// ---------------------------------------------------------------------------
// Lovasz theta

BoundReport lovasz_theta(const WeightedGraph& g) {
  if (g.size() > kMaxThetaVertices) {
    throw Error(ErrorCode::kTooLarge, "theta limited to " + std::to_string(kMaxThetaVertices) + " vertices, got " +
                                          std::to_string(g.size()));
  }
  const std::size_t n = g.size();
  const auto edges = g.edges();

  SemidefiniteProgram sdp;
  sdp.objective.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sdp.objective(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sqrt(g.weight(i) * g.weight(j));
    }
  }
  SparseSymmetric trace;
  for (std::size_t i = 0; i < n; ++i) trace.entries.push_back({i, i, 1.0});
  sdp.constraints.push_back(std::move(trace));
  for (const auto& [i, j] : edges) sdp.constraints.push_back(SparseSymmetric{{{i, j, 1.0}}});
  sdp.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sdp.constraints.size()));
  if (n > 0) sdp.rhs(0) = 1.0;

  BoundReport report;
  report.method = BoundMethod::kTheta;
  report.fingerprint = graph_fingerprint(g);
  ThetaCertificate cert;
  if (n == 0) {
    report.certificate = std::move(cert);
    return report;
  }

  const SdpReport sdp_report = solve_sdp(sdp);
  if (sdp_report.status != SolveStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure,
                "theta SDP: " + sdp_report.message + " after " + std::to_string(sdp_report.iterations) +
                    " iterations (primal " + format_double(sdp_report.primal_residual) + ", dual " +
                    format_double(sdp_report.dual_residual) + ", gap " + format_double(sdp_report.gap) + ")");
  }
  cert.matrix = sdp_report.x;
  cert.trace_multiplier = sdp_report.y(0);
  cert.edge_multipliers.assign(sdp_report.y.data() + 1, sdp_report.y.data() + sdp_report.y.size());
  cert.dual_value = sdp_report.dual_value;
  cert.primal_residual = sdp_report.primal_residual;
  cert.dual_residual = sdp_report.dual_residual;
  cert.iterations = sdp_report.iterations;
  report.value = sdp_report.value;
  report.certificate = std::move(cert);
  return report;
}

BoundReport compute_bound(const WeightedGraph& g, BoundMethod method) {
  switch (method) {
    case BoundMethod::kLocalRealistic: return independence_number(g);
    case BoundMethod::kFractionalPacking: return fractional_packing(g);
    case BoundMethod::kTheta: return lovasz_theta(g);
  }
  throw Error(ErrorCode::kOutOfRange, "unknown bound method");
}

// ---------------------------------------------------------------------------
// Certificate checks

namespace {

constexpr double kLpCheckTolerance = 1e-9;
constexpr double kThetaValueTolerance = 1e-6;
constexpr double kThetaFeasibilityTolerance = 1e-7;
constexpr double kPsdTolerance = 1e-8;

void check_independent_set(const WeightedGraph& g, const BoundReport& r, const IndependentSetCertificate& c,
                           CertificateCheck& out) {
  double sum = 0.0;
  for (std::size_t a = 0; a < c.vertices.size(); ++a) {
    if (c.vertices[a] >= g.size()) {
      out.problems.push_back("vertex index out of range");
      return;
    }
    sum += g.weight(c.vertices[a]);
    for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
      if (g.adjacent(c.vertices[a], c.vertices[b])) {
        out.problems.push_back("independent set contains edge " + std::to_string(c.vertices[a]) + "-" +
                               std::to_string(c.vertices[b]));
      }
    }
  }
  if (std::abs(sum - r.value) > 1e-12 * (1.0 + std::abs(sum))) {
    out.problems.push_back("independent set weight " + format_double(sum) + " != value " + format_double(r.value));
  }
}

void check_packing(const WeightedGraph& g, const BoundReport& r, const PackingCertificate& c, CertificateCheck& out) {
  const std::size_t n = g.size();
  if (c.assignment.size() != n || c.box_multipliers.size() != n || c.clique_multipliers.size() != c.cliques.size()) {
    out.problems.push_back("certificate dimensions do not match graph");
    return;
  }
  // Cliques must be cliques; primal feasibility; duality.
  double primal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.assignment[i] < -kLpCheckTolerance || c.assignment[i] > 1.0 + kLpCheckTolerance) {
      out.problems.push_back("assignment outside [0,1] at vertex " + std::to_string(i));
    }
    primal += g.weight(i) * c.assignment[i];
  }
  std::vector<double> cover(n, 0.0);
  double dual = 0.0;
  for (std::size_t q = 0; q < c.cliques.size(); ++q) {
    const auto& clique = c.cliques[q];
    double load = 0.0;
    for (std::size_t a = 0; a < clique.size(); ++a) {
      load += c.assignment.at(clique[a]);
      cover[clique[a]] += c.clique_multipliers[q];
      for (std::size_t b = a + 1; b < clique.size(); ++b) {
        if (!g.adjacent(clique[a], clique[b])) out.problems.push_back("listed clique " + std::to_string(q) + " is not a clique");
      }
    }
    if (load > 1.0 + kLpCheckTolerance) out.problems.push_back("clique " + std::to_string(q) + " overloaded");
    if (c.clique_multipliers[q] < -kLpCheckTolerance) out.problems.push_back("negative clique multiplier");
    dual += c.clique_multipliers[q];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (c.box_multipliers[i] < -kLpCheckTolerance) out.problems.push_back("negative box multiplier");
    if (cover[i] + c.box_multipliers[i] < g.weight(i) - kLpCheckTolerance) {
      out.problems.push_back("dual does not cover vertex " + std::to_string(i));
    }
    dual += c.box_multipliers[i];
  }
  const double scale = 1.0 + std::abs(r.value);
  if (std::abs(primal - r.value) > kLpCheckTolerance * scale) out.problems.push_back("primal objective != value");
  if (std::abs(dual - r.value) > kLpCheckTolerance * scale) {
    out.problems.push_back("duality gap " + format_double(dual - primal) + " exceeds tolerance");
  }
}

void check_theta(const WeightedGraph& g, const BoundReport& r, const ThetaCertificate& c, CertificateCheck& out) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) return;
  const auto edges = g.edges();
  if (c.matrix.rows() != n || c.matrix.cols() != n || c.edge_multipliers.size() != edges.size()) {
    out.problems.push_back("certificate dimensions do not match graph");
    return;
  }
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      w(i, j) = std::sqrt(g.weight(static_cast<std::size_t>(i)) * g.weight(static_cast<std::size_t>(j)));
    }
  }
  const double objective = (w.array() * c.matrix.array()).sum();
  if (std::abs(objective - r.value) > kThetaValueTolerance) out.problems.push_back("<W,X> does not reproduce value");
  if (std::abs(c.matrix.trace() - 1.0) > kThetaFeasibilityTolerance) out.problems.push_back("trace of X is not 1");
  for (const auto& [i, j] : edges) {
    if (std::abs(c.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > kThetaFeasibilityTolerance) {
      out.problems.push_back("X is nonzero on edge " + std::to_string(i) + "-" + std::to_string(j));
    }
  }
  if (min_eigenvalue(c.matrix) < -kPsdTolerance) out.problems.push_back("X is not positive semidefinite");

  // Dual slack Z = t I + sum_e y_e (E_ij + E_ji) - W must be psd with t ~ value.
  Eigen::MatrixXd z = c.trace_multiplier * Eigen::MatrixXd::Identity(n, n) - w;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto i = static_cast<Eigen::Index>(edges[e].first);
    const auto j = static_cast<Eigen::Index>(edges[e].second);
    z(i, j) += c.edge_multipliers[e];
    z(j, i) += c.edge_multipliers[e];
  }
  if (min_eigenvalue(z) < -kThetaFeasibilityTolerance * (1.0 + std::abs(c.trace_multiplier))) {
    out.problems.push_back("dual slack is not positive semidefinite");
  }
  if (std::abs(c.trace_multiplier - r.value) > kThetaValueTolerance) {
    out.problems.push_back("dual bound " + format_double(c.trace_multiplier) + " does not match value");
  }
}

}  // namespace

CertificateCheck verify_certificate(const WeightedGraph& g, const BoundReport& report) {
  CertificateCheck out;
  std::visit(
      [&](const auto& cert) {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, IndependentSetCertificate>) {
          check_independent_set(g, report, cert, out);
        } else if constexpr (std::is_same_v<T, PackingCertificate>) {
          check_packing(g, report, cert, out);
        } else {
          check_theta(g, report, cert, out);
        }
      },
      report.certificate);
  out.ok = out.problems.empty();
  return out;
}

}  // namespace epb

#pragma once

// The bound hierarchy on weighted exclusivity graphs:
//   independence number <= Lovasz theta <= fractional packing number.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "epb/graph.hpp"
#include "epb/solvers.hpp"

namespace epb {

enum class BoundMethod { kLocalRealistic, kFractionalPacking, kTheta };
const char* to_string(BoundMethod method);  // "lr" | "fractional-packing" | "theta"

struct IndependentSetCertificate {
  std::vector<std::size_t> vertices;  // ascending
};

struct PackingCertificate {
  std::vector<double> assignment;               // per vertex
  std::vector<std::vector<std::size_t>> cliques;  // maximal cliques, canonical order
  std::vector<double> clique_multipliers;       // LP dual per clique (fractional clique cover)
  std::vector<double> box_multipliers;          // LP dual of x_i <= 1
};

struct ThetaCertificate {
  Eigen::MatrixXd matrix;  // primal X
  double trace_multiplier = 0.0;
  std::vector<double> edge_multipliers;  // one per edge, in WeightedGraph::edges() order
  double dual_value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::size_t iterations = 0;
};

using Certificate = std::variant<IndependentSetCertificate, PackingCertificate, ThetaCertificate>;

struct BoundReport {
  BoundMethod method = BoundMethod::kLocalRealistic;
  double value = 0.0;
  Certificate certificate;
  std::string fingerprint;
  std::string note;
};

inline constexpr std::size_t kMaxIndependenceVertices = 40;
inline constexpr std::size_t kMaxPackingVertices = 300;
inline constexpr std::size_t kMaxCliques = 1'000'000;
inline constexpr std::size_t kMaxThetaVertices = 64;

// Exact maximum-weight independent set (branch and bound over 64-bit
// subsets). Among optimal sets the first in include-first order over vertex
// indices is returned. Throws kTooLarge above 40 vertices.
BoundReport independence_number(const WeightedGraph& g);

// Maximal cliques by Bron-Kerbosch with Tomita pivoting, each sorted
// ascending, the list sorted lexicographically. Throws kCliqueExplosion.
std::vector<std::vector<std::size_t>> maximal_cliques(const WeightedGraph& g, std::size_t limit = kMaxCliques);

// max sum w_i x_i  s.t. sum_{i in Q} x_i <= 1 for every maximal clique Q.
BoundReport fractional_packing(const WeightedGraph& g);

// Weighted theta: max <W, X> with W_ij = sqrt(w_i w_j), X_ij = 0 on edges,
// tr X = 1, X psd.
BoundReport lovasz_theta(const WeightedGraph& g);

inline BoundReport independence_number(const ExclusivityGraph& g) { return independence_number(g.graph()); }
inline BoundReport fractional_packing(const ExclusivityGraph& g) { return fractional_packing(g.graph()); }
inline BoundReport lovasz_theta(const ExclusivityGraph& g) { return lovasz_theta(g.graph()); }

BoundReport compute_bound(const WeightedGraph& g, BoundMethod method);

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Re-derives the value from the certificate alone.
CertificateCheck verify_certificate(const WeightedGraph& g, const BoundReport& report);

}  // namespace epb

#include "doctest.h"

#include <cmath>
#include <random>

#include "epb/bounds.hpp"
#include "epb/json_io.hpp"

using namespace epb;

namespace {

const double kSlack = 1e-5;

double brute_force_alpha(const WeightedGraph& g) {
  const std::size_t n = g.size();
  double best = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool independent = true;
    double w = 0.0;
    for (std::size_t i = 0; i < n && independent; ++i) {
      if (!((s >> i) & 1U)) continue;
      w += g.weight(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (((s >> j) & 1U) && g.adjacent(i, j)) {
          independent = false;
          break;
        }
      }
    }
    if (independent) best = std::max(best, w);
  }
  return best;
}

WeightedGraph random_graph(std::mt19937_64& rng, bool weighted) {
  const std::size_t n = 1 + rng() % 12;
  std::vector<std::string> labels;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("v" + std::to_string(i));
    weights.push_back(weighted ? 0.25 + static_cast<double>(rng() % 16) / 8.0 : 1.0);
  }
  WeightedGraph g(labels, weights);
  const double density = 0.15 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (static_cast<double>(rng() % 1000) / 1000.0 < density) g.add_edge(i, j);
    }
  }
  return g;
}

WeightedGraph edgeless(std::size_t n) { return WeightedGraph(n); }

}  // namespace

TEST_CASE("independence number reference values") {
  const auto chsh = independence_number(chsh_graph());
  CHECK(chsh.value == 3.0);
  CHECK(chsh.method == BoundMethod::kLocalRealistic);
  const auto& cert = std::get<IndependentSetCertificate>(chsh.certificate);
  CHECK(cert.vertices.size() == 3);
  CHECK(verify_certificate(chsh_graph().graph(), chsh).ok);
  CHECK(independence_number(edgeless(6)).value == 6.0);
  CHECK(independence_number(pentagon()).value == 2.0);
  CHECK(independence_number(complete_graph(5)).value == 1.0);
  CHECK(independence_number(edgeless(0)).value == 0.0);
}

TEST_CASE("independence number tie-break prefers low indices") {
  const auto r = independence_number(pentagon());
  CHECK(std::get<IndependentSetCertificate>(r.certificate).vertices == std::vector<std::size_t>{0, 2});
  const auto chsh = independence_number(chsh_graph());
  CHECK(std::get<IndependentSetCertificate>(chsh.certificate).vertices == std::vector<std::size_t>{0, 2, 4});
}

TEST_CASE("independence number size limit") {
  CHECK_NOTHROW(independence_number(cycle_graph(40)));
  try {
    independence_number(edgeless(41));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
}

TEST_CASE("maximal cliques") {
  const auto pc = maximal_cliques(pentagon());
  CHECK(pc.size() == 5);
  for (const auto& q : pc) CHECK(q.size() == 2);
  CHECK(maximal_cliques(complete_graph(4)) == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});
  CHECK(maximal_cliques(edgeless(3)) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(maximal_cliques(chsh_graph().graph()).size() == 12);
  try {
    maximal_cliques(edgeless(5), 4);
    FAIL("expected CliqueExplosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCliqueExplosion);
  }
}

TEST_CASE("fractional packing reference values") {
  const auto p = fractional_packing(pentagon());
  CHECK(std::abs(p.value - 2.5) <= 1e-9);
  CHECK(std::abs(fractional_packing(complete_graph(4)).value - 1.0) <= 1e-9);
  const auto chsh = fractional_packing(chsh_graph());
  CHECK(std::abs(chsh.value - 4.0) <= 1e-9);
  CHECK(chsh.note.find("derived") != std::string::npos);
  const auto& cert = std::get<PackingCertificate>(chsh.certificate);
  CHECK(cert.cliques.size() == 12);
  for (double x : cert.assignment) CHECK(std::abs(x - 0.5) <= 1e-9);
  CHECK(verify_certificate(chsh_graph().graph(), chsh).ok);
}

TEST_CASE("theta reference values") {
  const double tsirelson = 2.0 + std::sqrt(2.0);
  const auto chsh = lovasz_theta(chsh_graph());
  CHECK(std::abs(chsh.value - tsirelson) <= kSlack);
  const auto check = verify_certificate(chsh_graph().graph(), chsh);
  CHECK(check.ok);
  const auto& cert = std::get<ThetaCertificate>(chsh.certificate);
  CHECK(cert.matrix.rows() == 8);
  CHECK(cert.edge_multipliers.size() == 12);
  CHECK(min_eigenvalue(cert.matrix) >= -1e-8);
  CHECK(std::abs(lovasz_theta(pentagon()).value - std::sqrt(5.0)) <= kSlack);
  for (std::size_t n : {1U, 2U, 4U, 6U}) CHECK(std::abs(lovasz_theta(complete_graph(n)).value - 1.0) <= kSlack);
  CHECK(std::abs(lovasz_theta(edgeless(4)).value - 4.0) <= kSlack);
  CHECK(lovasz_theta(edgeless(0)).value == 0.0);
}

TEST_CASE("bound reports carry the graph fingerprint and method") {
  const auto g = chsh_graph().graph();
  for (auto m : {BoundMethod::kLocalRealistic, BoundMethod::kFractionalPacking, BoundMethod::kTheta}) {
    const auto r = compute_bound(g, m);
    CHECK(r.method == m);
    CHECK(r.fingerprint == graph_fingerprint(g));
    const Json j = report_to_json(r, g);
    CHECK(j["method"] == to_string(m));
    CHECK(j["fingerprint"] == r.fingerprint);
    CHECK(j.contains("certificate"));
  }
  CHECK(std::string(to_string(BoundMethod::kFractionalPacking)) == "fractional-packing");
  CHECK(report_to_json(independence_number(g), g)["certificate"]["kind"] == "independent-set");
  CHECK(report_to_json(fractional_packing(g), g)["certificate"]["kind"] == "lp-assignment");
  CHECK(report_to_json(lovasz_theta(g), g)["certificate"]["kind"] == "sdp-matrix");
}

TEST_CASE("tampered certificates are rejected") {
  const auto g = chsh_graph().graph();
  auto lr = independence_number(g);
  std::get<IndependentSetCertificate>(lr.certificate).vertices = {0, 1, 2};  // 0 and 1 are adjacent
  CHECK_FALSE(verify_certificate(g, lr).ok);

  auto lr_value = independence_number(g);
  lr_value.value = 4.0;
  CHECK_FALSE(verify_certificate(g, lr_value).ok);

  auto fp = fractional_packing(g);
  std::get<PackingCertificate>(fp.certificate).assignment[0] = 0.9;
  CHECK_FALSE(verify_certificate(g, fp).ok);

  auto fp_dual = fractional_packing(g);
  fp_dual.value = 3.5;
  CHECK_FALSE(verify_certificate(g, fp_dual).ok);

  auto theta = lovasz_theta(g);
  std::get<ThetaCertificate>(theta.certificate).matrix(0, 1) += 0.05;
  std::get<ThetaCertificate>(theta.certificate).matrix(1, 0) += 0.05;
  CHECK_FALSE(verify_certificate(g, theta).ok);

  auto theta_value = lovasz_theta(g);
  theta_value.value = 3.0;
  CHECK_FALSE(verify_certificate(g, theta_value).ok);

  auto wrong_kind = lovasz_theta(g);
  wrong_kind.certificate = IndependentSetCertificate{{0}};
  CHECK_FALSE(verify_certificate(g, wrong_kind).ok);
}

TEST_CASE("random graphs: brute force alpha and sandwich ordering") {
  std::mt19937_64 rng(20140312);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng, trial % 2 == 1);
    CAPTURE(trial);
    const auto a = independence_number(g);
    const auto t = lovasz_theta(g);
    const auto f = fractional_packing(g);
    CHECK(std::abs(a.value - brute_force_alpha(g)) <= 1e-12);
    CHECK(a.value <= t.value + kSlack);
    CHECK(t.value <= f.value + kSlack);
    CHECK(verify_certificate(g, a).ok);
    CHECK(verify_certificate(g, f).ok);
    CHECK(verify_certificate(g, t).ok);
  }
}

TEST_CASE("monotonicity: adding an edge never increases a bound") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(rng, trial % 2 == 0);
    if (g.size() < 3) continue;
    std::size_t i = 0, j = 0;
    for (int tries = 0; tries < 100 && (i == j || g.adjacent(i, j)); ++tries) {
      i = rng() % g.size();
      j = rng() % g.size();
    }
    if (i == j || g.adjacent(i, j)) continue;
    const double a0 = independence_number(g).value;
    const double t0 = lovasz_theta(g).value;
    const double f0 = fractional_packing(g).value;
    g.add_edge(i, j);
    CHECK(independence_number(g).value <= a0 + 1e-12);
    CHECK(lovasz_theta(g).value <= t0 + kSlack);
    CHECK(fractional_packing(g).value <= f0 + 1e-9);
  }
}

TEST_CASE("scaling: weights times c scale every bound by c") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_graph(rng, true);
    const double c = 0.5 + static_cast<double>(rng() % 7);
    auto scaled = g;
    std::vector<double> w(g.weights().begin(), g.weights().end());
    for (auto& x : w) x *= c;
    scaled.set_weights(w);
    for (auto m : {BoundMethod::kLocalRealistic, BoundMethod::kFractionalPacking, BoundMethod::kTheta}) {
      const double base = compute_bound(g, m).value;
      CHECK(std::abs(compute_bound(scaled, m).value - c * base) <= kSlack * std::max(1.0, c * base));
    }
  }
}

TEST_CASE("determinism") {
  const auto g = chsh_graph().graph();
  const auto a = lovasz_theta(g);
  const auto b = lovasz_theta(g);
  CHECK(a.value == b.value);
  CHECK(report_to_json(a, g).dump() == report_to_json(b, g).dump());
  CHECK(report_to_json(fractional_packing(g), g).dump() == report_to_json(fractional_packing(g), g).dump());
}

TEST_CASE("weighted chsh graph") {
  // Zero weight on one vertex removes it from every bound.
  auto g = chsh_graph().graph();
  std::vector<double> w(8, 1.0);
  w[0] = 0.0;
  g.set_weights(w);
  const double a = independence_number(g).value;
  const double t = lovasz_theta(g).value;
  const double f = fractional_packing(g).value;
  CHECK(a == 3.0);
  CHECK(a <= t + kSlack);
  CHECK(t <= f + kSlack);
  CHECK(t < 2.0 + std::sqrt(2.0));
}

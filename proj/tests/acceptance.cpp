// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "epb/bounds.hpp"
#include "epb/proof.hpp"

using namespace epb;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 for none
  std::function<Result()> run;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const double kTsirelson = 2.0 + std::sqrt(2.0);

Result lr_bound() {
  const auto r = independence_number(chsh_graph());
  const bool ok = r.value == 3.0 && verify_certificate(chsh_graph().graph(), r).ok;
  return {ok, "alpha = " + fmt("%.17g", r.value)};
}

Result theta_bound() {
  const auto r = lovasz_theta(chsh_graph());
  const double err = std::abs(r.value - kTsirelson);
  const bool ok = err <= 1e-5 && verify_certificate(chsh_graph().graph(), r).ok;
  return {ok, "theta = " + fmt("%.10f", r.value) + ", |theta - (2+sqrt2)| = " + fmt("%.2e", err)};
}

Result table1() {
  const auto table = build_table1();
  std::size_t checks = 0;
  std::size_t witnesses = 0;
  bool ok = table.size() == 4;
  for (const auto& s : table) {
    const auto v = verify_set(s);
    ok = ok && v.ok && v.pairs_checked == 36;
    checks += v.pairs_checked;
    for (const auto& pc : v.pairs) witnesses += !pc.witness.empty();
    for (std::size_t r = 0; r < 8; ++r) {
      const bool square = r == 0 || r == 1 || r == 4 || r == 5;
      ok = ok && s.probabilities[r].to_string() == (square ? "p^2" : "(1/2-p)^2");
    }
    ok = ok && s.probabilities[8].to_string() == "P(" + s.name + "_9)";
  }
  ok = ok && checks == 144 && witnesses == 144;
  return {ok, std::to_string(checks) + " exclusivity checks, " + std::to_string(witnesses) + " named witnesses"};
}

Result symmetric() {
  const auto r = symmetric_bound();
  const bool ok = r.verified && r.reduced_poly == QuadPoly(QSqrt2(1), QSqrt2(-16), QSqrt2(32)) &&
                  r.bound == QSqrt2(2, 1, 8) && r.bound.decimal(kDecimalPlaces) == "0.4267766953" &&
                  r.reduced_poly.evaluate(r.bound) == QSqrt2(0);
  return {ok, r.reduced_poly.to_string("p") + " <= 0, p_max = " + r.bound.to_string() + " = " +
                  r.bound.decimal(kDecimalPlaces)};
}

Result general() {
  const auto r = general_bound();
  const double theta = lovasz_theta(chsh_graph()).value;
  const bool ok = r.verified && r.aggregate == "S^2 + (4-S)^2 + 4 <= 16" &&
                  r.aggregate_poly == QuadPoly(QSqrt2(4), QSqrt2(-8), QSqrt2(2)) && r.bound == QSqrt2(2, 1, 1) &&
                  std::abs(r.bound.to_double() - theta) <= 1e-5;
  return {ok, r.aggregate + ", S_max = " + r.bound.to_string() + " = " + r.bound.decimal(kDecimalPlaces)};
}

Result enumeration() {
  const auto table = build_table1();
  auto key = [](const NineEventSet& s) {
    std::vector<std::string> v;
    for (const auto& e : s.events) v.push_back(e.to_string());
    std::sort(v.begin(), v.end());
    return v;
  };
  bool ok = true;
  std::size_t total = 0;
  std::size_t hits = 0;
  for (const auto& ninth : admissible_ninth_events()) {
    const auto sets = enumerate_nine_sets(ninth);
    ok = ok && sets.size() == 2;
    total += sets.size();
    for (const auto& s : sets) {
      ok = ok && verify_set(s).ok;
      for (const auto& t : table) hits += key(s) == key(t);
    }
  }
  ok = ok && hits == 4;
  return {ok, std::to_string(total) + " sets over 8 parity events, " + std::to_string(hits) + " table sets found"};
}

Result sum_identity() {
  std::mt19937_64 rng(20140312);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) worst = std::max(worst, sum_identity_residual(random_behavior(rng)));
  for (int k = 0; k < 20; ++k) worst = std::max(worst, sum_identity_residual(symmetric_behavior(0.5 * k / 19.0)));
  return {worst <= 1e-9, "100 random + 20 symmetric behaviors, max residual " + fmt("%.2e", worst)};
}

double brute_force_alpha(const WeightedGraph& g) {
  double best = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.size()); ++s) {
    bool independent = true;
    double w = 0.0;
    for (std::size_t i = 0; i < g.size() && independent; ++i) {
      if (!((s >> i) & 1U)) continue;
      w += g.weight(i);
      for (std::size_t j = i + 1; j < g.size(); ++j) independent = independent && !(((s >> j) & 1U) && g.adjacent(i, j));
    }
    if (independent) best = std::max(best, w);
  }
  return best;
}

Result solver_oracles() {
  const auto p = pentagon();
  const double a = independence_number(p).value;
  const double f = fractional_packing(p).value;
  const double t = lovasz_theta(p).value;
  bool ok = a == 2.0 && std::abs(f - 2.5) <= 1e-9 && std::abs(t - std::sqrt(5.0)) <= 1e-5;

  std::mt19937_64 rng(12);
  int graphs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    WeightedGraph g(n);
    const unsigned density = 20 + static_cast<unsigned>(rng() % 60);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng() % 100 < density) g.add_edge(i, j);
      }
    }
    const double ga = independence_number(g).value;
    const double gt = lovasz_theta(g).value;
    const double gf = fractional_packing(g).value;
    ok = ok && ga == brute_force_alpha(g) && ga <= gt + 1e-5 && gt <= gf + 1e-5;
    ++graphs;
  }
  return {ok, "pentagon alpha " + fmt("%g", a) + ", alpha* " + fmt("%.10g", f) + ", theta " + fmt("%.8f", t) + "; " +
                  std::to_string(graphs) + " random graphs ordered"};
}

Result packing() {
  const auto r = fractional_packing(chsh_graph());
  const bool ok = std::abs(r.value - 4.0) <= 1e-9 && verify_certificate(chsh_graph().graph(), r).ok &&
                  r.note.find("derived") != std::string::npos;
  return {ok, "alpha* = " + fmt("%.12f", r.value) + " (" + r.note + ")"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "local-realistic bound of the CHSH graph is 3", 1.0, lr_bound},
      {2, "theta of the CHSH graph is 2+sqrt(2) within 1e-5", 10.0, theta_bound},
      {3, "four nine-event sets verify pair by pair", 1.0, table1},
      {4, "symmetric derivation is exact", 0.0, symmetric},
      {5, "general derivation is exact and matches theta", 0.0, general},
      {6, "two nine-event sets per admissible parity event", 60.0, enumeration},
      {7, "sum identity on seeded behaviors", 0.0, sum_identity},
      {8, "solver oracles and sandwich ordering", 0.0, solver_oracles},
      {9, "fractional packing of the CHSH graph is 4", 0.0, packing},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += "; exceeded " + fmt("%g", c.time_limit) + " s";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "epb/proof_json.hpp"

#include <cmath>
#include <random>

namespace epb {

namespace {

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return v.convert_to<long long>();
  }
  return v.str();
}

double evaluate(const QuadPoly& poly, double x) {
  return poly.coefficient(0).to_double() + x * (poly.coefficient(1).to_double() + x * poly.coefficient(2).to_double());
}

Json verification_to_json(const SetVerification& v, const NineEventSet& s) {
  Json pairs = Json::array();
  for (const auto& pc : v.pairs) {
    pairs.push_back({{"first", s.labels.at(pc.first)},
                     {"second", s.labels.at(pc.second)},
                     {"exclusive", pc.exclusive},
                     {"witness", pc.exclusive ? Json(pc.witness) : Json(nullptr)}});
  }
  Json failures = Json::array();
  for (const auto& pc : v.failures) failures.push_back(Json::array({s.labels.at(pc.first), s.labels.at(pc.second)}));
  return {{"pairs_checked", v.pairs_checked},
          {"pairs", std::move(pairs)},
          {"non_exclusive_pairs", std::move(failures)},
          {"pattern_checked", v.pattern_checked},
          {"in_count", v.in_count},
          {"out_count", v.out_count},
          {"other_count", v.other_count},
          {"pattern_ok", v.pattern_ok},
          {"probabilities_ok", v.probabilities_ok},
          {"ok", v.ok}};
}

}  // namespace

Json qsqrt2_to_json(const QSqrt2& x) {
  return {{"a", big_json(x.a())},
          {"b", big_json(x.b())},
          {"d", big_json(x.d())},
          {"exact", x.to_string()},
          {"decimal", x.decimal(kDecimalPlaces)}};
}

Json poly_to_json(const QuadPoly& poly, const std::string& var) {
  Json coeffs = Json::array();
  for (int k = 0; k < 3; ++k) coeffs.push_back(qsqrt2_to_json(poly.coefficient(k)));
  return {{"variable", var}, {"text", poly.to_string(var)}, {"coefficients", std::move(coeffs)}};
}

Json nine_set_to_json(const NineEventSet& s, const SetVerification* verification, std::optional<double> p) {
  Json events = Json::array();
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    Json e = {{"label", s.labels.at(i)}, {"event", s.events[i].to_string()}};
    if (i < s.probabilities.size()) {
      const auto& prob = s.probabilities[i];
      e["probability"] = prob.to_string();
      if (p && prob.poly) e["value"] = evaluate(*prob.poly, *p);
    }
    events.push_back(std::move(e));
  }
  Json out = {{"name", s.name}, {"events", std::move(events)}};
  if (verification) out["verification"] = verification_to_json(*verification, s);
  return out;
}

Json table1_to_json(bool verify, std::optional<double> p) {
  if (p && !(*p >= 0.0 && *p <= 0.5)) throw Error(ErrorCode::kOutOfRange, "p must lie in [0, 1/2]");
  Json sets = Json::array();
  bool all_ok = true;
  std::size_t checks = 0;
  for (const auto& s : build_table1()) {
    if (verify) {
      const auto v = verify_set(s);
      all_ok = all_ok && v.ok;
      checks += v.pairs_checked;
      sets.push_back(nine_set_to_json(s, &v, p));
    } else {
      sets.push_back(nine_set_to_json(s, nullptr, p));
    }
  }
  Json out = {{"sets", std::move(sets)}};
  if (p) out["p"] = *p;
  if (verify) {
    out["exclusivity_checks"] = checks;
    out["verified"] = all_ok;
  }
  return out;
}

Json enumeration_to_json(const Event& ninth) {
  const auto sets = enumerate_nine_sets(ninth);
  const auto table = build_table1();
  Json arr = Json::array();
  bool all_ok = true;
  for (const auto& s : sets) {
    const auto v = verify_set(s);
    all_ok = all_ok && v.ok;
    Json j = nine_set_to_json(s, &v, std::nullopt);
    std::string match;
    for (const auto& t : table) {
      std::vector<std::string> a, b;
      for (const auto& e : s.events) a.push_back(e.to_string());
      for (const auto& e : t.events) b.push_back(e.to_string());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a == b) match = t.name;
    }
    j["table1_set"] = match.empty() ? Json(nullptr) : Json(match);
    arr.push_back(std::move(j));
  }
  return {{"ninth", ninth.to_string()}, {"count", sets.size()}, {"sets", std::move(arr)}, {"verified", all_ok}};
}

Json proof_to_json(const ProofReport& r) {
  Json sets = Json::array();
  for (const auto& v : r.sets) {
    sets.push_back({{"name", v.name},
                    {"pairs_checked", v.pairs_checked},
                    {"non_exclusive_pairs", v.failures.size()},
                    {"in_count", v.in_count},
                    {"out_count", v.out_count},
                    {"ok", v.ok}});
  }
  Json enumeration = Json::array();
  for (const auto& e : r.enumeration) enumeration.push_back({{"ninth", e.ninth}, {"sets", e.sets}});
  Json roots = Json::array();
  for (const auto& x : r.roots) roots.push_back(qsqrt2_to_json(x));
  Json assumptions = Json::array();
  for (const auto& a : r.assumptions) {
    assumptions.push_back({{"id", a.id}, {"statement", a.statement}, {"used_for", a.used_for}});
  }
  Json out = {{"mode", r.mode},
              {"variable", r.variable},
              {"sets", std::move(sets)},
              {"aggregate", r.aggregate},
              {"aggregate_polynomial", poly_to_json(r.aggregate_poly, r.variable)},
              {"reduced_polynomial", poly_to_json(r.reduced_poly, r.variable)},
              {"roots", std::move(roots)},
              {"bound", qsqrt2_to_json(r.bound)},
              {"s_bound", qsqrt2_to_json(r.s_bound)},
              {"steps", r.steps},
              {"assumptions", std::move(assumptions)},
              {"verified", r.verified}};
  if (r.mode == "general") {
    out["enumeration"] = std::move(enumeration);
    out["table1_sets_found"] = r.table1_sets_found;
    out["in_pair_multiplicity"] = r.in_pair_multiplicity;
    out["out_pair_multiplicity"] = r.out_pair_multiplicity;
  }
  return out;
}

Json identity_check_to_json(const IdentityCheckOptions& options) {
  std::mt19937_64 rng(options.seed);
  double worst = 0.0;
  Json random = Json::array();
  for (std::size_t k = 0; k < options.samples; ++k) {
    const Behavior b = random_behavior(rng);
    const double residual = sum_identity_residual(b);
    worst = std::max(worst, residual);
    random.push_back({{"index", k}, {"s", chsh_functional(b)}, {"residual", residual}});
  }
  Json symmetric = Json::array();
  for (std::size_t k = 0; k < options.symmetric_points; ++k) {
    const double p = options.symmetric_points == 1
                         ? 0.0
                         : 0.5 * static_cast<double>(k) / static_cast<double>(options.symmetric_points - 1);
    const double residual = sum_identity_residual(symmetric_behavior(p));
    worst = std::max(worst, residual);
    symmetric.push_back({{"p", p}, {"residual", residual}});
  }
  return {{"seed", options.seed},
          {"samples", options.samples},
          {"tolerance", options.tolerance},
          {"max_residual", worst},
          {"random", std::move(random)},
          {"symmetric", std::move(symmetric)},
          {"passed", worst <= options.tolerance}};
}

}  // namespace epb

#include "epb/proof.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace epb {

std::string SymbolicProbability::to_string() const {
  if (!poly) return symbol;
  if (*poly == p_squared()) return "p^2";
  if (*poly == complement_p_squared()) return "(1/2-p)^2";
  return poly->to_string("p");
}

QuadPoly p_squared() { return {0, 0, 1}; }

QuadPoly complement_p_squared() {
  const QuadPoly q{QSqrt2::rational(1, 2), -1, 0};
  return q * q;
}

// ---------------------------------------------------------------------------

namespace {

struct StandardIds {
  ObservableIndex alice[2], bob[2], alice_p[2], bob_p[2];
  ObservableIndex parity[2][2];  // parity[i][k] = A_iA'_k
};

const StandardIds& ids() {
  static const StandardIds s = [] {
    const auto r = ObservableRegistry::standard();
    StandardIds out{};
    for (int i = 0; i < 2; ++i) {
      const std::string n = std::to_string(i);
      out.alice[i] = r->index_of("A" + n);
      out.bob[i] = r->index_of("B" + n);
      out.alice_p[i] = r->index_of("A'" + n);
      out.bob_p[i] = r->index_of("B'" + n);
    }
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) out.parity[i][k] = r->index_of("A" + std::to_string(i) + "A'" + std::to_string(k));
    }
    return out;
  }();
  return s;
}

// Exactly one of the pair assigned: returns (setting, outcome).
std::optional<std::pair<int, Outcome>> single(const Event& e, const ObservableIndex (&pair)[2]) {
  const auto o0 = e.get(pair[0]);
  const auto o1 = e.get(pair[1]);
  if (o0.has_value() == o1.has_value()) return std::nullopt;
  return o0 ? std::make_pair(0, *o0) : std::make_pair(1, *o1);
}

Event make_product(int i, int j, int k, int l, Outcome a, Outcome b, Outcome ap, Outcome bp) {
  const auto& s = ids();
  Assignment asg(ObservableRegistry::standard());
  asg.set(s.alice[i], a).set(s.bob[j], b).set(s.alice_p[k], ap).set(s.bob_p[l], bp);
  return close_event(asg);
}

std::string witness_id(const Event& a, const Exclusivity& x) {
  return x.witness ? a.registry()->id(*x.witness) : std::string();
}

SymbolicProbability symmetric_probability(const Event& e) {
  const auto f = product_factors(e);
  if (f && f->first_in_s && f->second_in_s) return {p_squared(), ""};
  if (f && !f->first_in_s && !f->second_in_s) return {complement_p_squared(), ""};
  // Mixed factors: p (1/2 - p).
  return {QuadPoly{0, QSqrt2::rational(1, 2), -1}, ""};
}

}  // namespace

std::optional<ProductFactors> product_factors(const Event& e) {
  if (e.registry() != ObservableRegistry::standard()) return std::nullopt;
  const auto& s = ids();
  const auto a = single(e, s.alice);
  const auto b = single(e, s.bob);
  const auto ap = single(e, s.alice_p);
  const auto bp = single(e, s.bob_p);
  if (!a || !b || !ap || !bp) return std::nullopt;
  // Only the parity implied by the base values may be present.
  if (e.count() != 5) return std::nullopt;
  ProductFactors f;
  f.first = ChshTerm{a->first, b->first, a->second, b->second};
  f.second = ChshTerm{ap->first, bp->first, ap->second, bp->second};
  f.first_in_s = is_chsh_term(a->first, b->first, a->second, b->second);
  f.second_in_s = is_chsh_term(ap->first, bp->first, ap->second, bp->second);
  return f;
}

const std::vector<Event>& product_events() {
  static const std::vector<Event> events = [] {
    std::vector<Event> out;
    const Outcome signs[2] = {Outcome::kPlus, Outcome::kMinus};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            for (Outcome a : signs)
              for (Outcome b : signs)
                for (Outcome ap : signs)
                  for (Outcome bp : signs) out.push_back(make_product(i, j, k, l, a, b, ap, bp));
    return out;
  }();
  return events;
}

// ---------------------------------------------------------------------------

std::vector<NineEventSet> build_table1() {
  struct Column {
    const char* name;
    const char* rows[9];
  };
  static const Column kTable[4] = {
      {"e",
       {"A0+ B0+ A'0+ B'1+ A0A'0+", "A0- B0- A'0- B'1- A0A'0+", "A0+ B0- A'0+ B'1- A0A'0+", "A0- B0+ A'0- B'1+ A0A'0+",
        "A1+ B0+ A'1+ B'1- A1A'1+", "A1- B0- A'1- B'1+ A1A'1+", "A1+ B0- A'1+ B'1+ A1A'1+", "A1- B0+ A'1- B'1- A1A'1+",
        "A0A'0- A1A'1-"}},
      {"f",
       {"A0+ B0+ A'0+ B'0+ A0A'0+", "A0- B0- A'0- B'0- A0A'0+", "A0+ B0- A'0+ B'0- A0A'0+", "A0- B0+ A'0- B'0+ A0A'0+",
        "A1+ B0+ A'1- B'0- A1A'1-", "A1- B0- A'1+ B'0+ A1A'1-", "A1+ B0- A'1- B'0+ A1A'1-", "A1- B0+ A'1+ B'0- A1A'1-",
        "A0A'0- A1A'1+"}},
      {"g",
       {"A0+ B0+ A'0- B'0- A0A'0-", "A0- B0- A'0+ B'0+ A0A'0-", "A0+ B0- A'0- B'0+ A0A'0-", "A0- B0+ A'0+ B'0- A0A'0-",
        "A1+ B0+ A'1+ B'0+ A1A'1+", "A1- B0- A'1- B'0- A1A'1+", "A1+ B0- A'1+ B'0- A1A'1+", "A1- B0+ A'1- B'0+ A1A'1+",
        "A0A'0+ A1A'1-"}},
      {"h",
       {"A0+ B0+ A'0- B'1- A0A'0-", "A0- B0- A'0+ B'1+ A0A'0-", "A0+ B0- A'0- B'1+ A0A'0-", "A0- B0+ A'0+ B'1- A0A'0-",
        "A1+ B0+ A'1- B'1+ A1A'1-", "A1- B0- A'1+ B'1- A1A'1-", "A1+ B0- A'1- B'1- A1A'1-", "A1- B0+ A'1+ B'1+ A1A'1-",
        "A0A'0+ A1A'1+"}},
  };
  std::vector<NineEventSet> out;
  for (const auto& col : kTable) {
    NineEventSet s;
    s.name = col.name;
    for (int r = 0; r < 9; ++r) {
      s.labels.push_back(std::string(col.name) + std::to_string(r + 1));
      s.events.push_back(Event::parse(col.rows[r]));
      if (r < 8) {
        s.probabilities.push_back(symmetric_probability(s.events.back()));
      } else {
        s.probabilities.push_back({std::nullopt, "P(" + std::string(col.name) + "_9)"});
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

SetVerification verify_set(const NineEventSet& s) {
  SetVerification v;
  v.name = s.name;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    for (std::size_t j = i + 1; j < s.events.size(); ++j) {
      const auto x = are_exclusive(s.events[i], s.events[j]);
      PairCheck pc{i, j, x.exclusive, witness_id(s.events[i], x)};
      if (!pc.exclusive) v.failures.push_back(pc);
      v.pairs.push_back(std::move(pc));
    }
  }
  v.pairs_checked = v.pairs.size();

  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto f = product_factors(s.events[i]);
    if (f && f->first_in_s && f->second_in_s) {
      ++v.in_count;
    } else if (f && !f->first_in_s && !f->second_in_s) {
      ++v.out_count;
    } else {
      ++v.other_count;
    }
    if (i < s.probabilities.size()) {
      const auto& prob = s.probabilities[i];
      if (f && prob.poly) {
        const bool in = f->first_in_s && f->second_in_s;
        const bool out = !f->first_in_s && !f->second_in_s;
        if ((in && !(*prob.poly == p_squared())) || (out && !(*prob.poly == complement_p_squared()))) {
          v.probabilities_ok = false;
        }
      } else if (!f && (prob.poly || prob.symbol.empty())) {
        v.probabilities_ok = false;
      }
    }
  }
  if (s.events.size() == 9) {
    v.pattern_checked = true;
    v.pattern_ok = v.in_count == 4 && v.out_count == 4 && v.other_count == 1;
  }
  if (!s.probabilities.empty() && s.probabilities.size() != s.events.size()) v.probabilities_ok = false;
  v.ok = v.failures.empty() && v.pattern_ok && v.probabilities_ok;
  return v;
}

// ---------------------------------------------------------------------------

std::vector<Event> admissible_ninth_events() {
  const auto& s = ids();
  const std::pair<ObservableIndex, ObservableIndex> families[2] = {{s.parity[0][0], s.parity[1][1]},
                                                                   {s.parity[0][1], s.parity[1][0]}};
  const std::pair<Outcome, Outcome> signs[4] = {{Outcome::kPlus, Outcome::kPlus},
                                                {Outcome::kMinus, Outcome::kMinus},
                                                {Outcome::kPlus, Outcome::kMinus},
                                                {Outcome::kMinus, Outcome::kPlus}};
  std::vector<Event> out;
  for (const auto& [first, second] : families) {
    for (const auto& [a, b] : signs) {
      Assignment asg(ObservableRegistry::standard());
      asg.set(first, a).set(second, b);
      out.push_back(close_event(asg));
    }
  }
  return out;
}

namespace {

bool is_admissible_ninth(const Event& ninth) {
  if (ninth.registry() != ObservableRegistry::standard() || ninth.count() != 2) return false;
  const auto& s = ids();
  const bool same_setting = ninth.has(s.parity[0][0]) && ninth.has(s.parity[1][1]);
  const bool crossed = ninth.has(s.parity[0][1]) && ninth.has(s.parity[1][0]);
  return same_setting || crossed;
}

class NineSetSearch {
 public:
  NineSetSearch(std::vector<Event> candidates, std::vector<bool> in_s)
      : candidates_(std::move(candidates)), in_s_(std::move(in_s)) {
    const std::size_t n = candidates_.size();
    exclusive_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) exclusive_[i * n + j] = are_exclusive(candidates_[i], candidates_[j]).exclusive;
    }
  }

  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::size_t> chosen;
    extend(0, chosen, 0, 0);
    return std::move(found_);
  }

  const std::vector<Event>& candidates() const { return candidates_; }

 private:
  void extend(std::size_t start, std::vector<std::size_t>& chosen, int in, int out) {
    if (chosen.size() == 8) {
      found_.push_back(chosen);
      return;
    }
    const std::size_t n = candidates_.size();
    for (std::size_t c = start; c < n; ++c) {
      // Not enough candidates left to reach eight.
      if (chosen.size() + (n - c) < 8) return;
      const bool is_in = in_s_[c];
      if ((is_in && in == 4) || (!is_in && out == 4)) continue;
      bool ok = true;
      for (std::size_t d : chosen) {
        if (!exclusive_[c * n + d]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(c);
      extend(c + 1, chosen, in + (is_in ? 1 : 0), out + (is_in ? 0 : 1));
      chosen.pop_back();
    }
  }

  std::vector<Event> candidates_;
  std::vector<bool> in_s_;
  std::vector<bool> exclusive_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace

std::vector<NineEventSet> enumerate_nine_sets(const Event& ninth) {
  if (!is_admissible_ninth(ninth)) {
    throw Error(ErrorCode::kInvalidNinthEvent,
                "'" + ninth.to_string() + "' is not of the form (A0A'0 a, A1A'1 b) or (A0A'1 a, A1A'0 b)");
  }
  std::vector<Event> candidates;
  std::vector<bool> in_s;
  for (const auto& e : product_events()) {
    if (!are_exclusive(e, ninth).exclusive) continue;
    const auto f = product_factors(e);
    if (f->first_in_s != f->second_in_s) continue;
    candidates.push_back(e);
    in_s.push_back(f->first_in_s);
  }
  NineSetSearch search(std::move(candidates), std::move(in_s));
  const auto found = search.run();

  std::vector<NineEventSet> out;
  const std::string ninth_text = ninth.to_string();
  for (std::size_t k = 0; k < found.size(); ++k) {
    NineEventSet s;
    s.name = "(" + ninth_text + ")#" + std::to_string(k + 1);
    for (std::size_t m = 0; m < 8; ++m) {
      s.labels.push_back("x" + std::to_string(m + 1));
      s.events.push_back(search.candidates()[found[k][m]]);
      s.probabilities.push_back(symmetric_probability(s.events.back()));
    }
    s.labels.push_back("x9");
    s.events.push_back(ninth);
    s.probabilities.push_back({std::nullopt, "P(" + ninth_text + ")"});
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Assumption> assumption_ledger() {
  return {
      {"factorization",
       "P(A_i a, B_j b, A'_k a', B'_l b') = P(A_i a, B_j b) P(A'_k a', B'_l b'), both copies prepared identically",
       "assigns p^2 and (1/2-p)^2 to the product events; turns the product sums into S^2 and (4-S)^2"},
      {"joint-distribution",
       "sum_{a,b} P(A0A'0 a, A1A'1 b) = 1 and sum_{a,b} P(A0A'1 a, A1A'0 b) = 1",
       "eliminates the probabilities of the parity events"},
      {"parity-equivalence",
       "a product event and the same event extended by its implied parity outcome are equivalent",
       "lets product events join sets alongside parity events"},
  };
}

bool same_event_set(const NineEventSet& a, const NineEventSet& b) {
  auto key = [](const NineEventSet& s) {
    std::vector<std::string> v;
    for (const auto& e : s.events) v.push_back(e.to_string());
    std::sort(v.begin(), v.end());
    return v;
  };
  return key(a) == key(b);
}

std::size_t term_index(const ChshTerm& t, bool in_s) {
  const auto& terms = in_s ? chsh_terms() : complementary_terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& u = terms[k];
    if (u.alice_setting == t.alice_setting && u.bob_setting == t.bob_setting && u.alice == t.alice && u.bob == t.bob) {
      return k;
    }
  }
  throw Error(ErrorCode::kOutOfRange, "term not found");
}

const std::vector<NineEventSet>& general_sets() {
  static const std::vector<NineEventSet> sets = [] {
    std::vector<NineEventSet> out;
    for (const auto& ninth : admissible_ninth_events()) {
      auto found = enumerate_nine_sets(ninth);
      out.insert(out.end(), found.begin(), found.end());
    }
    return out;
  }();
  return sets;
}

void finish_bound(ProofReport& r) {
  r.reduced_poly = r.aggregate_poly.primitive();
  r.roots = r.reduced_poly.roots();
  if (!r.roots.empty()) r.bound = r.roots.back();
}

}  // namespace

ProofReport symmetric_bound() {
  ProofReport r;
  r.mode = "symmetric";
  r.variable = "p";
  r.assumptions = assumption_ledger();
  const auto table = build_table1();
  bool all_ok = true;
  for (const auto& s : table) {
    r.sets.push_back(verify_set(s));
    all_ok = all_ok && r.sets.back().ok;
  }
  r.steps.push_back("verified " + std::to_string(table.size()) + " sets of nine pairwise exclusive events");

  // Exclusivity principle: each set sums to at most 1.
  QuadPoly product_sum;
  std::set<std::string> ninth_events;
  for (const auto& s : table) {
    for (std::size_t m = 0; m < 8; ++m) product_sum += *s.probabilities[m].poly;
    ninth_events.insert(s.events[8].to_string());
  }
  r.steps.push_back("sum of product-event probabilities = " + product_sum.to_string("p"));

  // The four parity events are the four outcomes of (A0A'0, A1A'1), which sum to 1.
  std::set<std::string> family;
  for (const auto& n : admissible_ninth_events()) {
    if (n.has(ids().parity[0][0])) family.insert(n.to_string());
  }
  const bool identity_applies = ninth_events == family;
  all_ok = all_ok && identity_applies;
  r.steps.push_back(std::string("parity events cover all outcomes of (A0A'0, A1A'1): ") +
                    (identity_applies ? "yes, their probabilities sum to 1" : "NO"));

  const QSqrt2 sets = static_cast<long long>(table.size());
  r.aggregate_poly = product_sum + QuadPoly::constant(1) - QuadPoly::constant(sets);
  r.aggregate = "16p^2 + 16(1/2-p)^2 + 1 <= 4";
  r.steps.push_back("aggregate: " + r.aggregate_poly.to_string("p") + " <= 0");
  r.in_pair_multiplicity = 0;
  r.out_pair_multiplicity = 0;
  finish_bound(r);
  // S collects eight terms that each equal p.
  r.s_bound = QSqrt2(8) * r.bound;
  r.steps.push_back("p <= " + r.bound.to_string() + ", so S = 8p <= " + r.s_bound.to_string());
  r.verified = all_ok && r.roots.size() == 2;
  return r;
}

ProofReport general_bound() {
  ProofReport r;
  r.mode = "general";
  r.variable = "S";
  r.assumptions = assumption_ledger();
  bool all_ok = true;

  const auto ninths = admissible_ninth_events();
  const auto& sets = general_sets();
  for (const auto& ninth : ninths) {
    std::size_t count = 0;
    for (const auto& s : sets) count += s.events.back() == ninth;
    r.enumeration.push_back({ninth.to_string(), count});
    all_ok = all_ok && count == 2;
  }
  for (const auto& s : sets) {
    r.sets.push_back(verify_set(s));
    all_ok = all_ok && r.sets.back().ok;
  }
  for (const auto& t : build_table1()) {
    for (const auto& s : sets) {
      if (same_event_set(s, t)) {
        ++r.table1_sets_found;
        break;
      }
    }
  }
  all_ok = all_ok && r.table1_sets_found == 4;
  r.steps.push_back("enumerated " + std::to_string(sets.size()) + " sets over " + std::to_string(ninths.size()) +
                    " parity events; " + std::to_string(r.table1_sets_found) + " of the 4 table sets recovered");

  // Ordered factor pairs must tile S x S and comp x comp uniformly.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> in_pairs, out_pairs;
  std::map<std::string, std::size_t> ninth_counts;
  for (const auto& s : sets) {
    for (std::size_t m = 0; m < 8; ++m) {
      const auto f = product_factors(s.events[m]);
      if (!f || f->first_in_s != f->second_in_s) continue;
      auto& bucket = f->first_in_s ? in_pairs : out_pairs;
      ++bucket[{term_index(f->first, f->first_in_s), term_index(f->second, f->second_in_s)}];
    }
    ++ninth_counts[s.events.back().to_string()];
  }
  auto uniform = [](const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& m) -> std::size_t {
    if (m.size() != 64) return 0;
    const std::size_t k = m.begin()->second;
    for (const auto& [key, v] : m) {
      if (v != k) return 0;
    }
    return k;
  };
  r.in_pair_multiplicity = uniform(in_pairs);
  r.out_pair_multiplicity = uniform(out_pairs);
  all_ok = all_ok && r.in_pair_multiplicity > 0 && r.out_pair_multiplicity > 0;
  r.steps.push_back("each ordered pair of S events appears " + std::to_string(r.in_pair_multiplicity) +
                    "x; each ordered pair of complementary events appears " +
                    std::to_string(r.out_pair_multiplicity) + "x");

  // Each parity family's four outcomes must occur equally often for the
  // joint-distribution identities to apply.
  std::size_t ninth_total = 0;
  for (int fam = 0; fam < 2; ++fam) {
    std::size_t mult = 0;
    bool even = true;
    for (int k = 0; k < 4; ++k) {
      const std::size_t c = ninth_counts[ninths[static_cast<std::size_t>(fam * 4 + k)].to_string()];
      if (k == 0) mult = c;
      even = even && c == mult;
    }
    all_ok = all_ok && even && mult > 0;
    ninth_total += mult;
  }
  r.steps.push_back("parity-event probabilities sum to " + std::to_string(ninth_total) +
                    " by the joint-distribution identities");

  // sum_{x,y in S} P(x)P(y) = S^2 and the complementary terms total 4 - S.
  const QuadPoly s_var = QuadPoly::variable();
  const QuadPoly comp = QuadPoly::constant(4) - s_var;
  const QSqrt2 kin = static_cast<long long>(r.in_pair_multiplicity);
  const QSqrt2 kout = static_cast<long long>(r.out_pair_multiplicity);
  const QSqrt2 total = static_cast<long long>(ninth_total);
  const QSqrt2 n_sets = static_cast<long long>(sets.size());
  r.aggregate_poly = kin * (s_var * s_var) + kout * (comp * comp) + QuadPoly::constant(total) - QuadPoly::constant(n_sets);
  auto mult = [](std::size_t k) { return k == 1 ? std::string() : std::to_string(k); };
  r.aggregate = mult(r.in_pair_multiplicity) + "S^2 + " + mult(r.out_pair_multiplicity) + "(4-S)^2 + " +
                std::to_string(ninth_total) + " <= " + std::to_string(sets.size());
  r.steps.push_back("aggregate: " + r.aggregate);
  finish_bound(r);
  r.s_bound = r.bound;
  r.steps.push_back("reduced: " + r.reduced_poly.to_string("S") + " <= 0, so S <= " + r.bound.to_string());
  r.verified = all_ok && r.roots.size() == 2;
  return r;
}

double sum_identity_residual(const Behavior& b) {
  if (!validate_behavior(b).empty()) throw Error(ErrorCode::kInvalidBehavior, "behavior fails validation");
  const double s = chsh_functional(b);
  const Behavior both = product_behavior(b, b);
  double sum = 0.0;
  for (const auto& set : general_sets()) {
    for (std::size_t m = 0; m < 8; ++m) sum += both.probability(set.events[m]);
  }
  return std::abs(sum - (s * s + (4.0 - s) * (4.0 - s)));
}

}  // namespace epb

#include "epb/scenario.hpp"

#include <cmath>
#include <charconv>

namespace epb {

std::vector<Context> BellScenario::contexts() const {
  std::vector<Context> out{Context{}};
  for (const auto& party_settings : settings) {
    std::vector<Context> next;
    for (const auto& prefix : out) {
      for (const auto& s : party_settings) {
        Context c = prefix;
        c.push_back(s);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

BellScenario chsh_scenario() {
  return BellScenario{{"Alice", "Bob"}, {{"A0", "A1"}, {"B0", "B1"}}};
}

BellScenario two_copy_scenario() {
  return BellScenario{{"Alice", "Bob", "Alice'", "Bob'"},
                      {{"A0", "A1"}, {"B0", "B1"}, {"A'0", "A'1"}, {"B'0", "B'1"}}};
}

std::size_t outcome_index(const std::vector<Outcome>& outcomes) {
  std::size_t index = 0;
  for (Outcome o : outcomes) index = (index << 1) | (o == Outcome::kMinus ? 1U : 0U);
  return index;
}

std::string outcome_key(std::size_t index, std::size_t parties) {
  std::string key(parties, '+');
  for (std::size_t k = 0; k < parties; ++k) {
    if ((index >> (parties - 1 - k)) & 1U) key[k] = '-';
  }
  return key;
}

std::size_t parse_outcome_key(const std::string& key) {
  if (key.empty()) throw Error(ErrorCode::kParse, "empty outcome key");
  std::size_t index = 0;
  for (char c : key) {
    if (c != '+' && c != '-') throw Error(ErrorCode::kParse, "bad outcome key '" + key + "'");
    index = (index << 1) | (c == '-' ? 1U : 0U);
  }
  return index;
}

// ---------------------------------------------------------------------------

void Behavior::set_context(const Context& context, std::vector<double> probs) {
  if (context.empty()) throw Error(ErrorCode::kInvalidBehavior, "empty context");
  if (probs.size() != (std::size_t{1} << context.size())) {
    throw Error(ErrorCode::kInvalidBehavior, "context needs 2^parties probabilities");
  }
  if (!table_.empty() && table_.begin()->first.size() != context.size() && table_.count(context) == 0) {
    throw Error(ErrorCode::kInvalidBehavior, "contexts must all have the same number of parties");
  }
  table_[context] = std::move(probs);
}

const std::vector<double>& Behavior::context_probs(const Context& context) const {
  auto it = table_.find(context);
  if (it == table_.end()) {
    std::string name;
    for (const auto& s : context) name += (name.empty() ? "" : ",") + s;
    throw Error(ErrorCode::kUndefinedContext, "behavior lacks context (" + name + ")");
  }
  return it->second;
}

double Behavior::probability(const Context& context, const std::vector<Outcome>& outcomes) const {
  if (outcomes.size() != context.size()) throw Error(ErrorCode::kLengthMismatch, "outcome count != context size");
  return context_probs(context).at(outcome_index(outcomes));
}

double Behavior::probability(const Event& event) const {
  const auto& registry = *event.registry();
  Context context;
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (registry.at(i).kind != Observable::Kind::kBase) continue;
    if (auto o = event.get(i)) {
      context.push_back(registry.id(i));
      outcomes.push_back(*o);
    }
  }
  return probability(context, outcomes);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ChshTerm> make_terms(bool in_s) {
  std::vector<ChshTerm> terms;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // S collects equal outcomes except on (A1,B1), where it collects opposite ones.
      const bool equal_in_s = !(i == 1 && j == 1);
      for (Outcome a : {Outcome::kPlus, Outcome::kMinus}) {
        Outcome b = (equal_in_s == in_s) ? a : flip(a);
        terms.push_back(ChshTerm{i, j, a, b});
      }
    }
  }
  return terms;
}

Context chsh_context(int i, int j) { return {"A" + std::to_string(i), "B" + std::to_string(j)}; }

}  // namespace

const std::vector<ChshTerm>& chsh_terms() {
  static const std::vector<ChshTerm> terms = make_terms(true);
  return terms;
}

const std::vector<ChshTerm>& complementary_terms() {
  static const std::vector<ChshTerm> terms = make_terms(false);
  return terms;
}

bool is_chsh_term(int alice_setting, int bob_setting, Outcome alice, Outcome bob) {
  const bool equal = alice == bob;
  return (alice_setting == 1 && bob_setting == 1) ? !equal : equal;
}

double chsh_functional(const Behavior& behavior) {
  double s = 0.0;
  for (const auto& t : chsh_terms()) {
    s += behavior.probability(chsh_context(t.alice_setting, t.bob_setting), {t.alice, t.bob});
  }
  return s;
}

Behavior symmetric_behavior(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw Error(ErrorCode::kOutOfRange, "symmetric behavior needs 0 <= p <= 1/2");
  }
  Behavior b;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::vector<double> probs(4);
      for (std::size_t k = 0; k < 4; ++k) {
        const Outcome a = (k & 2U) ? Outcome::kMinus : Outcome::kPlus;
        const Outcome o = (k & 1U) ? Outcome::kMinus : Outcome::kPlus;
        probs[k] = is_chsh_term(i, j, a, o) ? p : 0.5 - p;
      }
      b.set_context(chsh_context(i, j), std::move(probs));
    }
  }
  return b;
}

Behavior uniform_behavior() { return symmetric_behavior(0.25); }

Behavior deterministic_behavior(Outcome a0, Outcome a1, Outcome b0, Outcome b1) {
  const Outcome alice[2] = {a0, a1};
  const Outcome bob[2] = {b0, b1};
  Behavior b;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::vector<double> probs(4, 0.0);
      probs[outcome_index({alice[i], bob[j]})] = 1.0;
      b.set_context(chsh_context(i, j), std::move(probs));
    }
  }
  return b;
}

Behavior random_behavior(std::mt19937_64& rng) {
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Behavior b;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // Exponential spacings give a uniform simplex point.
      std::vector<double> probs(4);
      double total = 0.0;
      for (auto& p : probs) {
        p = -std::log(1.0 - uniform());
        total += p;
      }
      for (auto& p : probs) p /= total;
      b.set_context(chsh_context(i, j), std::move(probs));
    }
  }
  return b;
}

std::string primed(const std::string& id) {
  if (id.empty()) return id;
  return id.substr(0, 1) + "'" + id.substr(1);
}

Behavior product_behavior(const Behavior& first, const Behavior& second) {
  const auto scenario = chsh_scenario();
  for (const auto& ctx : scenario.contexts()) {
    first.context_probs(ctx);
    second.context_probs(ctx);
  }
  for (const Behavior* b : {&first, &second}) {
    if (!validate_behavior(*b).empty()) throw Error(ErrorCode::kInvalidBehavior, "product of invalid behavior");
  }
  Behavior out;
  for (const auto& [c1, p1] : first.table()) {
    for (const auto& [c2, p2] : second.table()) {
      Context ctx = c1;
      for (const auto& s : c2) ctx.push_back(primed(s));
      std::vector<double> probs(p1.size() * p2.size());
      for (std::size_t x = 0; x < p1.size(); ++x) {
        for (std::size_t y = 0; y < p2.size(); ++y) probs[x * p2.size() + y] = p1[x] * p2[y];
      }
      out.set_context(ctx, std::move(probs));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Violation::to_string() const {
  std::string ctx;
  for (const auto& s : context) ctx += (ctx.empty() ? "" : ",") + s;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  *res.ptr = '\0';
  switch (kind) {
    case Kind::kNormalization: return "NormalizationViolation(" + ctx + ", " + buf + ")";
    case Kind::kNegativeProbability:
      return "NegativeProbability(" + ctx + ", " + outcome_key(outcome.value_or(0), context.size()) + ", " + buf + ")";
    case Kind::kNotFinite: return "NonFiniteProbability(" + ctx + ")";
    case Kind::kSignaling: return "SignalingViolation(" + ctx + ", " + buf + ")";
  }
  return "Violation";
}

std::vector<Violation> validate_behavior(const Behavior& behavior, const ValidationOptions& options) {
  std::vector<Violation> out;
  for (const auto& [ctx, probs] : behavior.table()) {
    double sum = 0.0;
    bool finite = true;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (!std::isfinite(probs[k])) {
        finite = false;
        continue;
      }
      if (probs[k] < 0.0) out.push_back({Violation::Kind::kNegativeProbability, ctx, probs[k], k});
      sum += probs[k];
    }
    if (!finite) {
      out.push_back({Violation::Kind::kNotFinite, ctx, 0.0, std::nullopt});
      continue;
    }
    if (std::abs(sum - 1.0) > options.tolerance) {
      out.push_back({Violation::Kind::kNormalization, ctx, sum, std::nullopt});
    }
  }
  if (!options.check_no_signaling) return out;

  // Marginalising out any one party must not depend on that party's setting.
  const std::size_t parties = behavior.parties();
  for (std::size_t k = 0; k < parties; ++k) {
    std::map<Context, std::pair<Context, std::vector<double>>> seen;
    for (const auto& [ctx, probs] : behavior.table()) {
      Context reduced;
      for (std::size_t q = 0; q < parties; ++q) {
        if (q != k) reduced.push_back(ctx[q]);
      }
      std::vector<double> marginal(std::size_t{1} << (parties - 1), 0.0);
      for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        const std::size_t shift = parties - 1 - k;
        const std::size_t high = idx >> (shift + 1);
        const std::size_t low = idx & ((std::size_t{1} << shift) - 1);
        marginal[(high << shift) | low] += probs[idx];
      }
      auto it = seen.find(reduced);
      if (it == seen.end()) {
        seen.emplace(reduced, std::make_pair(ctx, std::move(marginal)));
        continue;
      }
      double worst = 0.0;
      for (std::size_t m = 0; m < marginal.size(); ++m) {
        worst = std::max(worst, std::abs(marginal[m] - it->second.second[m]));
      }
      if (worst > options.tolerance) out.push_back({Violation::Kind::kSignaling, ctx, worst, std::nullopt});
    }
  }
  return out;
}

}  // namespace epb

#pragma once

// Bell scenarios and behaviors (per-context joint probability tables).

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epb/events.hpp"

namespace epb {

using Context = std::vector<std::string>;  // one setting id per party

struct BellScenario {
  std::vector<std::string> parties;
  std::vector<std::vector<std::string>> settings;  // per party

  // Cartesian product of the settings, first party varying slowest.
  std::vector<Context> contexts() const;
  std::size_t outcomes_per_context() const { return std::size_t{1} << parties.size(); }
};

BellScenario chsh_scenario();
BellScenario two_copy_scenario();

// Joint outcome index within a context: party k contributes bit
// (parties - 1 - k), set when that party's outcome is -1. "++" = 0, "--" = 3.
std::size_t outcome_index(const std::vector<Outcome>& outcomes);
std::string outcome_key(std::size_t index, std::size_t parties);  // e.g. "+-"
std::size_t parse_outcome_key(const std::string& key);

class Behavior {
 public:
  Behavior() = default;

  // probs.size() must be 2^context.size(). Replaces an existing entry.
  void set_context(const Context& context, std::vector<double> probs);

  bool has_context(const Context& context) const { return table_.count(context) != 0; }
  const std::vector<double>& context_probs(const Context& context) const;  // throws kUndefinedContext
  double probability(const Context& context, const std::vector<Outcome>& outcomes) const;
  // Probability of an event whose assigned base observables form a context
  // of this behavior. Parity values are implied by closure and ignored.
  double probability(const Event& event) const;

  const std::map<Context, std::vector<double>>& table() const { return table_; }
  std::size_t parties() const { return table_.empty() ? 0 : table_.begin()->first.size(); }

 private:
  std::map<Context, std::vector<double>> table_;
};

// The eight events (A_i a, B_j b) summed in S, in their conventional order:
// A0+B0+, A0-B0-, A0+B1+, A0-B1-, A1+B0+, A1-B0-, A1+B1-, A1-B1+.
struct ChshTerm {
  int alice_setting;
  int bob_setting;
  Outcome alice;
  Outcome bob;
};
const std::vector<ChshTerm>& chsh_terms();
bool is_chsh_term(int alice_setting, int bob_setting, Outcome alice, Outcome bob);
// The complementary eight (A_i a, B_j b) events, in matching order.
const std::vector<ChshTerm>& complementary_terms();

double chsh_functional(const Behavior& behavior);

// p on every S term and 1/2 - p on every complementary term.
Behavior symmetric_behavior(double p);
Behavior uniform_behavior();
// Local deterministic box assigning fixed outcomes to A0, A1, B0, B1.
Behavior deterministic_behavior(Outcome a0, Outcome a1, Outcome b0, Outcome b1);

// Each context gets an independent uniformly random point of the probability
// simplex, drawn directly from the raw 64-bit engine output.
Behavior random_behavior(std::mt19937_64& rng);

// P(A_i a, B_j b, A'_k a', B'_l b') = P(A_i a, B_j b) P(A'_k a', B'_l b').
// The second behavior's setting ids are primed ("A0" -> "A'0").
Behavior product_behavior(const Behavior& first, const Behavior& second);
std::string primed(const std::string& id);

struct Violation {
  enum class Kind { kNormalization, kNegativeProbability, kNotFinite, kSignaling };
  Kind kind;
  Context context;
  double value = 0.0;
  std::optional<std::size_t> outcome;  // for per-entry violations
  std::string to_string() const;
};

struct ValidationOptions {
  double tolerance = 1e-12;
  bool check_no_signaling = false;
};

std::vector<Violation> validate_behavior(const Behavior& behavior, const ValidationOptions& options = {});

}  // namespace epb

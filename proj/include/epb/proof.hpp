#pragma once

// Mechanized derivation of the CHSH bound 2 + sqrt 2 from the exclusivity
// principle on two independent copies of the experiment, with parity
// measurements A_iA'_k and a joint distribution for each parity family.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "epb/events.hpp"
#include "epb/qsqrt2.hpp"
#include "epb/scenario.hpp"

namespace epb {

// Probability attached to a member of a nine-event set: a polynomial in p for
// the product events (symmetric case), a named symbol for the parity event.
struct SymbolicProbability {
  std::optional<QuadPoly> poly;
  std::string symbol;
  std::string to_string() const;  // "p^2", "(1/2-p)^2", "P(e_9)"
};

QuadPoly p_squared();                // p^2
QuadPoly complement_p_squared();     // (1/2 - p)^2

struct NineEventSet {
  std::string name;                 // "e" .. "h" for the fixed table
  std::vector<std::string> labels;  // per member, e.g. "e1"
  std::vector<Event> events;        // eight product events, then the parity event
  std::vector<SymbolicProbability> probabilities;
};

// A product event (A_i a, B_j b, A'_k a', B'_l b') split into its two
// one-copy factors. Nothing is returned for events of any other shape.
struct ProductFactors {
  ChshTerm first;
  ChshTerm second;
  bool first_in_s = false;
  bool second_in_s = false;
};
std::optional<ProductFactors> product_factors(const Event& e);

// All 256 closed product events in canonical order (settings i, j, k, l
// then outcomes, + before -).
const std::vector<Event>& product_events();

// The four sets {e_i}, {f_i}, {g_i}, {h_i}.
std::vector<NineEventSet> build_table1();

struct PairCheck {
  std::size_t first;
  std::size_t second;
  bool exclusive = false;
  std::string witness;  // observable id, empty when not exclusive
};

struct SetVerification {
  std::string name;
  std::size_t pairs_checked = 0;
  std::vector<PairCheck> pairs;
  std::vector<PairCheck> failures;  // non-exclusive pairs
  bool pattern_checked = false;     // only full nine-event sets
  std::size_t in_count = 0;         // both factors among the S events
  std::size_t out_count = 0;        // both factors complementary
  std::size_t other_count = 0;      // mixed or not a product event
  bool pattern_ok = true;
  bool probabilities_ok = true;     // symbolic probabilities agree with membership
  bool ok = true;
};

SetVerification verify_set(const NineEventSet& s);

// The eight admissible parity events: (A0A'0 a, A1A'1 b) and (A0A'1 a, A1A'0 b).
std::vector<Event> admissible_ninth_events();

// Every set of eight pairwise exclusive product events that are exclusive
// with `ninth`, four with both factors in S and four with both complementary.
// Canonically ordered. Throws kInvalidNinthEvent.
std::vector<NineEventSet> enumerate_nine_sets(const Event& ninth);

struct Assumption {
  std::string id;
  std::string statement;
  std::string used_for;
};

struct EnumerationCount {
  std::string ninth;
  std::size_t sets = 0;
};

struct ProofReport {
  std::string mode;  // "symmetric" | "general"
  std::vector<SetVerification> sets;
  std::vector<EnumerationCount> enumeration;
  std::size_t table1_sets_found = 0;  // general mode: reference sets among the enumerated ones
  std::string variable;               // "p" or "S"
  std::string aggregate;              // human form of the summed inequality
  QuadPoly aggregate_poly;            // lhs - rhs of the summed inequality, <= 0
  QuadPoly reduced_poly;              // primitive part
  std::vector<QSqrt2> roots;
  QSqrt2 bound;    // largest root: p_max or S_max
  QSqrt2 s_bound;  // the induced bound on S
  std::size_t in_pair_multiplicity = 0;
  std::size_t out_pair_multiplicity = 0;
  std::vector<std::string> steps;
  std::vector<Assumption> assumptions;
  bool verified = false;
};

inline constexpr int kDecimalPlaces = 10;

ProofReport symmetric_bound();
ProofReport general_bound();

// |sum over the 16 sets of P(product events) under b x b  -  (S^2 + (4-S)^2)|.
double sum_identity_residual(const Behavior& b);

}  // namespace epb

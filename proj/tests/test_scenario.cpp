#include "doctest.h"

#include <cmath>
#include <random>

#include "epb/scenario.hpp"

using namespace epb;

namespace {

const double kPMax = (2.0 + std::sqrt(2.0)) / 8.0;

Behavior sample_behavior(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_behavior(rng);
}

}  // namespace

TEST_CASE("chsh scenario contexts") {
  const auto s = chsh_scenario();
  const auto ctx = s.contexts();
  REQUIRE(ctx.size() == 4);
  CHECK(ctx[0] == Context{"A0", "B0"});
  CHECK(ctx[1] == Context{"A0", "B1"});
  CHECK(ctx[2] == Context{"A1", "B0"});
  CHECK(ctx[3] == Context{"A1", "B1"});
  CHECK(s.outcomes_per_context() == 4);
  const auto two = two_copy_scenario();
  CHECK(two.parties.size() == 4);
  CHECK(two.contexts().size() == 16);
}

TEST_CASE("outcome keys put the first party in the high bit") {
  CHECK(outcome_index({Outcome::kPlus, Outcome::kPlus}) == 0);
  CHECK(outcome_index({Outcome::kPlus, Outcome::kMinus}) == 1);
  CHECK(outcome_index({Outcome::kMinus, Outcome::kPlus}) == 2);
  CHECK(outcome_index({Outcome::kMinus, Outcome::kMinus}) == 3);
  for (std::size_t k = 0; k < 16; ++k) CHECK(parse_outcome_key(outcome_key(k, 4)) == k);
  CHECK(outcome_key(1, 2) == "+-");
  CHECK_THROWS_AS(parse_outcome_key("+x"), Error);
  CHECK_THROWS_AS(parse_outcome_key(""), Error);
}

TEST_CASE("the eight S terms in conventional order") {
  const auto& t = chsh_terms();
  REQUIRE(t.size() == 8);
  const char* expected[] = {"A0+B0+", "A0-B0-", "A0+B1+", "A0-B1-", "A1+B0+", "A1-B0-", "A1+B1-", "A1-B1+"};
  for (std::size_t k = 0; k < 8; ++k) {
    std::string s = "A" + std::to_string(t[k].alice_setting) + sign_char(t[k].alice) + "B" +
                    std::to_string(t[k].bob_setting) + sign_char(t[k].bob);
    CHECK(s == expected[k]);
    CHECK(is_chsh_term(t[k].alice_setting, t[k].bob_setting, t[k].alice, t[k].bob));
    const auto& c = complementary_terms()[k];
    CHECK_FALSE(is_chsh_term(c.alice_setting, c.bob_setting, c.alice, c.bob));
  }
}

TEST_CASE("chsh functional on reference behaviors") {
  CHECK(chsh_functional(symmetric_behavior(kPMax)) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(chsh_functional(uniform_behavior()) == doctest::Approx(2.0));
  CHECK(chsh_functional(deterministic_behavior(Outcome::kPlus, Outcome::kPlus, Outcome::kPlus, Outcome::kPlus)) ==
        3.0);
  Behavior partial;
  partial.set_context({"A0", "B0"}, {1, 0, 0, 0});
  try {
    chsh_functional(partial);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUndefinedContext);
  }
}

TEST_CASE("deterministic boxes never exceed 3") {
  double best = 0.0;
  for (int m = 0; m < 16; ++m) {
    auto o = [m](int bit) { return (m >> bit) & 1 ? Outcome::kMinus : Outcome::kPlus; };
    best = std::max(best, chsh_functional(deterministic_behavior(o(0), o(1), o(2), o(3))));
  }
  CHECK(best == 3.0);
}

TEST_CASE("symmetric behavior") {
  const auto quarter = symmetric_behavior(0.25);
  for (const auto& [ctx, probs] : quarter.table()) {
    for (double p : probs) CHECK(p == 0.25);
  }
  const auto top = symmetric_behavior(kPMax);
  for (const auto& t : complementary_terms()) {
    const Context ctx{"A" + std::to_string(t.alice_setting), "B" + std::to_string(t.bob_setting)};
    CHECK(top.probability(ctx, {t.alice, t.bob}) == doctest::Approx((2.0 - std::sqrt(2.0)) / 8.0));
  }
  const auto mid = symmetric_behavior(0.3);
  for (const auto& [ctx, probs] : mid.table()) {
    CHECK(probs[0] + probs[1] + probs[2] + probs[3] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(symmetric_behavior(-0.01), Error);
  CHECK_THROWS_AS(symmetric_behavior(0.51), Error);
  CHECK_THROWS_AS(symmetric_behavior(std::nan("")), Error);
  for (int k = 0; k <= 50; ++k) {
    const double p = 0.5 * k / 50.0;
    CHECK(chsh_functional(symmetric_behavior(p)) == doctest::Approx(8.0 * p).epsilon(1e-15));
  }
}

TEST_CASE("product behavior factorizes") {
  const double p = 0.37;
  const auto b = symmetric_behavior(p);
  const auto pb = product_behavior(b, b);
  CHECK(pb.table().size() == 16);
  CHECK(pb.probability(Event::parse("A0+ B0+ A'0+ B'1+")) == doctest::Approx(p * p));
  CHECK(pb.probability(Event::parse("A0+ B0- A'0+ B'1-")) == doctest::Approx((0.5 - p) * (0.5 - p)));
  // The implied parity is ignored when looking up the context.
  CHECK(pb.probability(Event::parse("A0+ B0+ A'0+ B'1+ A0A'0+")) == doctest::Approx(p * p));
  const auto uu = product_behavior(uniform_behavior(), uniform_behavior());
  for (const auto& [ctx, probs] : uu.table()) {
    for (double v : probs) CHECK(v == doctest::Approx(1.0 / 16.0));
  }
  CHECK(primed("B1") == "B'1");
}

TEST_CASE("product marginals recover each factor") {
  const auto b1 = sample_behavior(11);
  const auto b2 = sample_behavior(12);
  const auto pb = product_behavior(b1, b2);
  for (const auto& c1 : chsh_scenario().contexts()) {
    for (const auto& c2 : chsh_scenario().contexts()) {
      const Context ctx{c1[0], c1[1], primed(c2[0]), primed(c2[1])};
      const auto& joint = pb.context_probs(ctx);
      for (std::size_t x = 0; x < 4; ++x) {
        double first = 0.0, second = 0.0;
        for (std::size_t y = 0; y < 4; ++y) {
          first += joint[x * 4 + y];
          second += joint[y * 4 + x];
        }
        CHECK(std::abs(first - b1.context_probs(c1)[x]) <= 1e-12);
        CHECK(std::abs(second - b2.context_probs(c2)[x]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("product behavior rejects invalid or incomplete inputs") {
  Behavior bad = uniform_behavior();
  bad.set_context({"A0", "B0"}, {0.5, 0.5, 0.5, 0.5});
  CHECK_THROWS_AS(product_behavior(bad, uniform_behavior()), Error);
  Behavior partial;
  partial.set_context({"A0", "B0"}, {1, 0, 0, 0});
  CHECK_THROWS_AS(product_behavior(partial, uniform_behavior()), Error);
}

TEST_CASE("validation reports violations") {
  CHECK(validate_behavior(symmetric_behavior(0.3)).empty());

  Behavior short_sum = uniform_behavior();
  short_sum.set_context({"A0", "B0"}, {0.45, 0.45, 0.0, 0.0});
  const auto v = validate_behavior(short_sum);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::kNormalization);
  CHECK(v[0].value == doctest::Approx(0.9));
  CHECK(v[0].to_string() == "NormalizationViolation(A0,B0, 0.9)");

  Behavior negative = uniform_behavior();
  negative.set_context({"A1", "B1"}, {0.6, -0.1, 0.25, 0.25});
  const auto n = validate_behavior(negative);
  REQUIRE(n.size() == 1);
  CHECK(n[0].kind == Violation::Kind::kNegativeProbability);
  CHECK(n[0].to_string().rfind("NegativeProbability(A1,B1, +-", 0) == 0);

  Behavior nan = uniform_behavior();
  nan.set_context({"A1", "B0"}, {std::nan(""), 0.5, 0.25, 0.25});
  CHECK(validate_behavior(nan).at(0).kind == Violation::Kind::kNotFinite);

  CHECK_THROWS_AS(short_sum.set_context({"A0", "B0"}, {1.0}), Error);
}

TEST_CASE("no-signaling check is opt-in") {
  // Alice's marginal depends on Bob's setting: normalized but signaling.
  Behavior b = uniform_behavior();
  b.set_context({"A0", "B1"}, {0.5, 0.5, 0.0, 0.0});
  CHECK(validate_behavior(b).empty());
  ValidationOptions options;
  options.check_no_signaling = true;
  const auto v = validate_behavior(b, options);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == Violation::Kind::kSignaling);
  CHECK(validate_behavior(symmetric_behavior(kPMax), options).empty());
}

TEST_CASE("random behaviors are valid, seeded and bounded") {
  std::mt19937_64 a(99), b(99);
  for (int k = 0; k < 200; ++k) {
    const auto x = random_behavior(a);
    const auto y = random_behavior(b);
    CHECK(x.table() == y.table());
    CHECK(validate_behavior(x).empty());
    const double s = chsh_functional(x);
    CHECK(s >= 0.0);
    CHECK(s <= 4.0);
  }
}

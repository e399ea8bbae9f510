#include "doctest.h"

#include <random>

#include "epb/events.hpp"

using namespace epb;

namespace {

Event ev(const char* text) { return Event::parse(text); }

std::string witness_id(const Exclusivity& x) {
  return x.witness ? ObservableRegistry::standard()->id(*x.witness) : std::string();
}

// A random partial assignment over the base observables, closed.
Event random_event(std::mt19937_64& rng) {
  const auto reg = ObservableRegistry::standard();
  for (;;) {
    Assignment a(reg);
    for (ObservableIndex i = 0; i < reg->size(); ++i) {
      const auto r = rng() % 4;
      if (r == 0) a.set(i, Outcome::kPlus);
      if (r == 1) a.set(i, Outcome::kMinus);
    }
    try {
      return close_event(a);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("standard registry lists base observables before parities") {
  const auto reg = ObservableRegistry::standard();
  REQUIRE(reg->size() == 12);
  const char* ids[] = {"A0", "A1", "B0", "B1", "A'0", "A'1", "B'0", "B'1", "A0A'0", "A1A'1", "A0A'1", "A1A'0"};
  for (std::size_t i = 0; i < 12; ++i) CHECK(reg->id(i) == ids[i]);
  CHECK(reg->parities().size() == 4);
  CHECK(reg->at(reg->index_of("A1A'0")).kind == Observable::Kind::kParity);
  CHECK_FALSE(reg->find("C0").has_value());
  CHECK_THROWS_AS(reg->index_of("C0"), Error);
}

TEST_CASE("registry builder rejects malformed parities") {
  ObservableRegistry::Builder b;
  b.add_base("X").add_base("Y").add_parity("X", "Y");
  CHECK_THROWS_AS(b.add_parity("X", "XY"), Error);
  CHECK_THROWS_AS(b.add_parity("X", "X"), Error);
  CHECK_THROWS_AS(b.add_parity("X", "Z"), Error);
  CHECK_THROWS_AS(b.add_base("X"), Error);
  const auto reg = b.build();
  CHECK(reg->id(2) == "XY");
}

TEST_CASE("closure propagates parity values") {
  SUBCASE("both operands determine the parity") {
    CHECK(ev("A0+ A'0+").to_string() == "A0+ A'0+ A0A'0+");
    CHECK(ev("A0- A'0+").to_string() == "A0- A'0+ A0A'0-");
  }
  SUBCASE("parities alone are left untouched") {
    CHECK(ev("A0A'0- A1A'1-").to_string() == "A0A'0- A1A'1-");
  }
  SUBCASE("parity and one operand determine the other operand") {
    CHECK(ev("A1+ A1A'1-").to_string() == "A1+ A'1- A1A'1-");
    CHECK(ev("A'1+ A1A'1-").to_string() == "A1- A'1+ A1A'1-");
  }
  SUBCASE("propagation reaches chained parities") {
    // A0A'0 fixes A'0, which together with A1A'0 fixes A1, then A1A'1 fixes A'1.
    CHECK(ev("A0+ A0A'0- A1A'0+ A1A'1+").to_string() == "A0+ A1- A'0- A'1- A0A'0- A1A'1+ A0A'1- A1A'0+");
  }
}

TEST_CASE("closure rejects contradictions") {
  CHECK_THROWS_AS(ev("A0+ A'0- A0A'0+"), Error);
  try {
    ev("A0+ A'0- A0A'0+");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContradiction);
  }
  CHECK_THROWS_AS(ev("A0+ A0-"), Error);
}

TEST_CASE("parser accepts the unicode minus and reports bad tokens") {
  CHECK(ev("A0\xE2\x88\x92 B0+") == ev("A0- B0+"));
  CHECK(ev("  A0+\tB0-  ") == ev("A0+ B0-"));
  CHECK(ev("") .count() == 0);
  auto code_of = [](const char* text) {
    try {
      ev(text);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error");
    return ErrorCode::kParse;
  };
  CHECK(code_of("A0") == ErrorCode::kParse);
  CHECK(code_of("A0*") == ErrorCode::kParse);
  CHECK(code_of("C7+") == ErrorCode::kUnknownObservable);
  CHECK(ev("A0+ A0+") == ev("A0+"));
}

TEST_CASE("parity soundness over all eight rows") {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        std::string text = std::string("A1") + (a ? "-" : "+") + " A'1" + (b ? "-" : "+") + " A1A'1" + (c ? "-" : "+");
        const bool consistent = ((a ^ b) == c);
        if (consistent) {
          CHECK_NOTHROW(ev(text.c_str()));
        } else {
          CHECK_THROWS_AS(ev(text.c_str()), Error);
        }
      }
    }
  }
}

TEST_CASE("equivalence is identity of closures") {
  CHECK(are_equivalent(ev("A0+ B0+ A'0+ B'1+"), ev("A0+ B0+ A'0+ B'1+ A0A'0+")));
  const Event e = ev("A1- B1+");
  CHECK(are_equivalent(e, e));
  CHECK_FALSE(are_equivalent(ev("A0+ B0+"), ev("A0+ B1+")));
}

TEST_CASE("exclusivity with witnesses") {
  const Event e1 = ev("A0+ B0+ A'0+ B'1+ A0A'0+");
  const Event e9 = ev("A0A'0- A1A'1-");
  const auto x = are_exclusive(e1, e9);
  CHECK(x.exclusive);
  CHECK(witness_id(x) == "A0A'0");

  CHECK_FALSE(are_exclusive(e1, e1).exclusive);
  CHECK_FALSE(are_exclusive(e1, e1).witness.has_value());

  const auto y = are_exclusive(ev("A1+ B0+ A'1- B'0-"), ev("A1+ B0- A'1- B'0+"));
  CHECK(y.exclusive);
  CHECK(witness_id(y) == "B0");

  CHECK_FALSE(are_exclusive(ev("A0+ B0+"), ev("A0+ B1+")).exclusive);
  // A parity implied only by closure can be the witness.
  const auto z = are_exclusive(ev("A0+ A'0+"), ev("A0A'0-"));
  CHECK(z.exclusive);
  CHECK(witness_id(z) == "A0A'0");
}

TEST_CASE("events from different registries do not mix") {
  ObservableRegistry::Builder b;
  const auto other = b.add_base("A0").add_base("B0").build();
  const Event foreign = Event::parse("A0+", other);
  CHECK_THROWS_AS(are_exclusive(foreign, ev("A0-")), Error);
  CHECK_THROWS_AS(are_equivalent(foreign, ev("A0+")), Error);
}

TEST_CASE("property: closure idempotence, symmetry and congruence") {
  std::mt19937_64 rng(7);
  const auto reg = ObservableRegistry::standard();
  std::vector<Event> pool;
  for (int k = 0; k < 60; ++k) pool.push_back(random_event(rng));
  for (const auto& e : pool) {
    // Re-closing the already closed assignment changes nothing.
    Assignment a(reg);
    for (ObservableIndex i = 0; i < reg->size(); ++i) {
      if (auto o = e.get(i)) a.set(i, *o);
    }
    CHECK(close_event(a) == e);
    CHECK(Event::parse(e.to_string()) == e);
    CHECK_FALSE(are_exclusive(e, e).exclusive);
  }
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      const auto ab = are_exclusive(a, b);
      const auto ba = are_exclusive(b, a);
      CHECK(ab.exclusive == ba.exclusive);
      CHECK(ab.witness == ba.witness);
      if (ab.exclusive) {
        CHECK(a.get(*ab.witness).has_value());
        CHECK(a.get(*ab.witness) != b.get(*ab.witness));
      }
    }
  }
  // An equivalent re-spelling (explicit implied parity) behaves identically.
  for (const auto& e : pool) {
    const Event twin = Event::parse(e.to_string());
    for (const auto& other : pool) CHECK(are_exclusive(e, other).exclusive == are_exclusive(twin, other).exclusive);
  }
}

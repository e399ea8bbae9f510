#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "epb/graph.hpp"
#include "epb/json_io.hpp"
#include "epb/scenario.hpp"

using namespace epb;

namespace {

std::size_t count_lines(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.find(needle) != std::string::npos;
  return n;
}

std::vector<Event> chsh_events() {
  std::vector<Event> out;
  for (const auto& t : chsh_terms()) {
    out.push_back(Event::parse("A" + std::to_string(t.alice_setting) + sign_char(t.alice) + " B" +
                               std::to_string(t.bob_setting) + sign_char(t.bob)));
  }
  return out;
}

std::size_t index_of(const ExclusivityGraph& g, const char* text) {
  const Event e = Event::parse(text);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.events()[i] == e) return i;
  }
  FAIL("event not in graph");
  return 0;
}

}  // namespace

TEST_CASE("build_graph derives edges from exclusivity") {
  const auto g = build_graph(chsh_events());
  CHECK(g.size() == 8);
  CHECK(g.graph().adjacent(index_of(g, "A0+ B0+"), index_of(g, "A0- B0-")));
  CHECK_FALSE(g.graph().adjacent(index_of(g, "A0+ B0+"), index_of(g, "A0+ B1+")));
  const auto single = build_graph({Event::parse("A0+ B0+")});
  CHECK(single.size() == 1);
  CHECK(single.graph().edge_count() == 0);
}

TEST_CASE("build_graph input errors") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  CHECK(code_of([] { build_graph({Event::parse("A0+ A'0+"), Event::parse("A0+ A'0+ A0A'0+")}); }) ==
        ErrorCode::kDuplicateEvent);
  CHECK(code_of([] { build_graph({Event::parse("A0+")}, {1.0, 2.0}); }) == ErrorCode::kLengthMismatch);
  CHECK(code_of([] { build_graph({Event::parse("A0+")}, {-1.0}); }) == ErrorCode::kInvalidGraph);
}

TEST_CASE("chsh graph structure") {
  const auto g = chsh_graph();
  const auto& w = g.graph();
  CHECK(g.size() == 8);
  // Each S event conflicts with exactly three others (one per shared setting
  // with opposite outcome), so the graph is 3-regular.
  CHECK(w.edge_count() == 12);
  for (std::size_t i = 0; i < 8; ++i) CHECK(w.degree(i) == 3);
  bool triangle = false;
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = a + 1; b < 8; ++b) {
      for (std::size_t c = b + 1; c < 8; ++c) triangle |= w.adjacent(a, b) && w.adjacent(b, c) && w.adjacent(a, c);
    }
  }
  CHECK_FALSE(triangle);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK_FALSE(w.adjacent(i, i));
    CHECK(w.weight(i) == 1.0);
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(w.adjacent(i, j) == w.adjacent(j, i));
      if (i != j) CHECK(w.adjacent(i, j) == are_exclusive(g.events()[i], g.events()[j]).exclusive);
    }
  }
  CHECK(w.label(0) == "A0+ B0+");
}

TEST_CASE("dot export") {
  const auto one = export_dot(build_graph({Event::parse("A1- B0+")}));
  CHECK(one.rfind("graph exclusivity {", 0) == 0);
  CHECK(count_lines(one, "[label=") == 1);
  CHECK(count_lines(one, " -- ") == 0);
  CHECK(one.find("label=\"A1- B0+\"") != std::string::npos);

  const auto pent = export_dot(pentagon());
  CHECK(count_lines(pent, "[label=") == 5);
  CHECK(count_lines(pent, " -- ") == 5);

  const auto chsh = export_dot(chsh_graph());
  CHECK(count_lines(chsh, "[label=") == 8);
  CHECK(count_lines(chsh, " -- ") == 12);
  CHECK(chsh.find("weight=1") != std::string::npos);
  CHECK(count_lines(chsh, "->") == 0);
}

TEST_CASE("order covariance") {
  const auto events = chsh_events();
  std::vector<std::size_t> perm(events.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(3);
  const auto base = build_graph(events);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Event> shuffled;
    for (auto k : perm) shuffled.push_back(events[k]);
    const auto g = build_graph(shuffled);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = 0; j < perm.size(); ++j) {
        CHECK(g.graph().adjacent(i, j) == base.graph().adjacent(perm[i], perm[j]));
      }
    }
  }
}

TEST_CASE("abstract graphs") {
  CHECK(pentagon().edge_count() == 5);
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(cycle_graph(7).edge_count() == 7);
  WeightedGraph g(3);
  g.add_edge(0, 2);
  CHECK(g.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}});
  CHECK_THROWS_AS(g.add_edge(1, 1), Error);
  CHECK_THROWS_AS(g.add_edge(0, 3), Error);
  g.remove_edge(2, 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("graph JSON round trip") {
  SUBCASE("event graph") {
    const auto g = build_graph(chsh_events(), {1, 2, 0.5, 1, 1, 3, 1, 0.25});
    const Json j = graph_to_json(g);
    CHECK(j["vertices"][0]["event"] == "A0+ B0+");
    CHECK(j["edges"].size() == 12);
    const auto parsed = graph_from_json(j);
    REQUIRE(parsed.exclusivity.has_value());
    CHECK(*parsed.exclusivity == g);
    CHECK(parsed.graph == g.graph());
    CHECK(graph_from_json(Json::parse(j.dump())).graph == g.graph());
  }
  SUBCASE("label graph") {
    const auto p = pentagon();
    const Json j = graph_to_json(p);
    CHECK(j["vertices"][0].contains("label"));
    const auto parsed = graph_from_json(j);
    CHECK_FALSE(parsed.exclusivity.has_value());
    CHECK(parsed.graph == p);
  }
  SUBCASE("edges are optional for event graphs and must agree when given") {
    Json j = graph_to_json(chsh_graph());
    j.erase("edges");
    CHECK(graph_from_json(j).graph.edge_count() == 12);
    Json wrong = graph_to_json(chsh_graph());
    wrong["edges"].erase(0);
    CHECK_THROWS_AS(graph_from_json(wrong), Error);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(graph_from_json(Json::parse("[]")), Error);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [{"weight": 1}]})")), Error);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [{"event": "A0+"}, {"label": "x"}]})")), Error);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [{"label": "x"}], "edges": [[0, 4]]})")), Error);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [{"label": "x", "weight": "heavy"}]})")), Error);
  }
}

TEST_CASE("behavior JSON round trip") {
  std::mt19937_64 rng(5);
  const auto b = random_behavior(rng);
  const Json j = behavior_to_json(b);
  CHECK(j["contexts"].size() == 4);
  CHECK(j["contexts"][0]["settings"] == Json::array({"A0", "B0"}));
  CHECK(j["contexts"][0]["probs"].contains("+-"));
  CHECK(behavior_from_json(Json::parse(j.dump())).table() == b.table());
  CHECK_THROWS_AS(behavior_from_json(Json::parse(R"({"contexts": [{"settings": ["A0","B0"], "probs": {"++": 1}}]})")),
                  Error);
}

TEST_CASE("fingerprints are stable and sensitive") {
  const auto a = graph_fingerprint(chsh_graph().graph());
  CHECK(a.size() == 16);
  CHECK(a == graph_fingerprint(chsh_graph().graph()));
  auto g = chsh_graph().graph();
  g.remove_edge(0, 1);
  CHECK(graph_fingerprint(g) != a);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(3.0) == "3");
}

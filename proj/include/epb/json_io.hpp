#pragma once

// JSON forms of graphs, behaviors and bound reports.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "epb/bounds.hpp"
#include "epb/graph.hpp"
#include "epb/scenario.hpp"

namespace epb {

using Json = nlohmann::json;

// {"vertices": [{"event": "<grammar>", "weight": w}], "edges": [[i, j], ...]}
Json graph_to_json(const ExclusivityGraph& g);
// Abstract graphs use {"label": ...} in place of {"event": ...}.
Json graph_to_json(const WeightedGraph& g);

// Event vertices are rebuilt through build_graph and the listed edges must
// match the computed exclusivity relation; label vertices take edges as given.
struct ParsedGraph {
  WeightedGraph graph;
  std::optional<ExclusivityGraph> exclusivity;  // set when every vertex is an event
};
ParsedGraph graph_from_json(const Json& j, const RegistryPtr& registry = ObservableRegistry::standard());

// {"contexts": [{"settings": [...], "probs": {"++": x, ...}}, ...]}
Json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json report_to_json(const BoundReport& r, const WeightedGraph& g);

// FNV-1a 64 of the canonical (sorted-key, compact) JSON dump, as 16 hex digits.
std::string fingerprint(const Json& canonical);
std::string graph_fingerprint(const WeightedGraph& g);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

}  // namespace epb

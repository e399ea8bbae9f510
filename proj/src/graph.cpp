#include "epb/graph.hpp"

#include <cmath>
#include <cstdio>

#include "epb/scenario.hpp"

namespace epb {

WeightedGraph::WeightedGraph(std::size_t n, double weight)
    : weights_(n, weight), adjacency_(n * n, 0) {
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels_.push_back("v" + std::to_string(i));
  set_weights(weights_);
}

WeightedGraph::WeightedGraph(std::vector<std::string> labels, std::vector<double> weights)
    : labels_(std::move(labels)), adjacency_(weights.size() * weights.size(), 0) {
  if (labels_.size() != weights.size()) throw Error(ErrorCode::kLengthMismatch, "label and weight counts differ");
  set_weights(std::move(weights));
}

void WeightedGraph::set_weights(std::vector<double> weights) {
  if (weights.size() != labels_.size()) throw Error(ErrorCode::kLengthMismatch, "weight count != vertex count");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::kInvalidGraph, "vertex weights must be finite and >= 0");
  }
  weights_ = std::move(weights);
}

void WeightedGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw Error(ErrorCode::kInvalidGraph, "edge endpoint out of range");
  if (i == j) throw Error(ErrorCode::kInvalidGraph, "self loops are not allowed");
  adjacency_[i * size() + j] = 1;
  adjacency_[j * size() + i] = 1;
}

void WeightedGraph::remove_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw Error(ErrorCode::kInvalidGraph, "edge endpoint out of range");
  adjacency_[i * size() + j] = 0;
  adjacency_[j * size() + i] = 0;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) count += adjacent(i, j);
  }
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t WeightedGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < size(); ++j) d += adjacent(i, j);
  return d;
}

WeightedGraph complete_graph(std::size_t n) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

WeightedGraph cycle_graph(std::size_t n) {
  WeightedGraph g(n);
  if (n >= 3) {
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  } else if (n == 2) {
    g.add_edge(0, 1);
  }
  return g;
}

WeightedGraph pentagon() { return cycle_graph(5); }

// ---------------------------------------------------------------------------

ExclusivityGraph build_graph(std::vector<Event> events, std::vector<double> weights) {
  if (events.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch, "got " + std::to_string(events.size()) + " events but " +
                                                std::to_string(weights.size()) + " weights");
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (are_equivalent(events[i], events[j])) {
        throw Error(ErrorCode::kDuplicateEvent, "events " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " are equivalent (" + events[i].to_string() + ")");
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(events.size());
  for (const auto& e : events) labels.push_back(e.to_string());

  ExclusivityGraph out;
  out.graph_ = WeightedGraph(std::move(labels), std::move(weights));
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (are_exclusive(events[i], events[j]).exclusive) out.graph_.add_edge(i, j);
    }
  }
  out.events_ = std::move(events);
  return out;
}

ExclusivityGraph build_graph(std::vector<Event> events) {
  std::vector<double> weights(events.size(), 1.0);
  return build_graph(std::move(events), std::move(weights));
}

ExclusivityGraph chsh_graph() {
  const auto registry = ObservableRegistry::standard();
  std::vector<Event> events;
  for (const auto& t : chsh_terms()) {
    Assignment a(registry);
    a.set("A" + std::to_string(t.alice_setting), t.alice);
    a.set("B" + std::to_string(t.bob_setting), t.bob);
    events.push_back(close_event(a));
  }
  return build_graph(std::move(events));
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const WeightedGraph& g) {
  std::string out = "graph exclusivity {\n";
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", g.weight(i));
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(g.label(i)) + "\", weight=" + buf + "];\n";
  }
  for (const auto& [i, j] : g.edges()) {
    out += "  n" + std::to_string(i) + " -- n" + std::to_string(j) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace epb

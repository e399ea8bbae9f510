#pragma once

// Weighted exclusivity graphs: vertices are closed events, edges are
// exclusivity relations.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epb/events.hpp"

namespace epb {

// Dense, undirected, vertex-weighted graph with a label per vertex. This is
// the surface the bound computations work on.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n, double weight = 1.0);
  WeightedGraph(std::vector<std::string> labels, std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * size() + j] != 0; }
  void add_edge(std::size_t i, std::size_t j);
  void remove_edge(std::size_t i, std::size_t j);
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;  // i < j, lexicographic
  std::size_t degree(std::size_t i) const;

  double weight(std::size_t i) const { return weights_.at(i); }
  std::span<const double> weights() const { return weights_; }
  void set_weights(std::vector<double> weights);
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
  std::vector<unsigned char> adjacency_;  // row-major size x size
};

WeightedGraph complete_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph pentagon();

class ExclusivityGraph {
 public:
  const std::vector<Event>& events() const { return events_; }
  const WeightedGraph& graph() const { return graph_; }
  std::size_t size() const { return events_.size(); }

  friend bool operator==(const ExclusivityGraph&, const ExclusivityGraph&) = default;

 private:
  friend ExclusivityGraph build_graph(std::vector<Event>, std::vector<double>);
  std::vector<Event> events_;
  WeightedGraph graph_;
};

// Throws kDuplicateEvent when two events are equivalent, kLengthMismatch when
// the weight count differs from the event count.
ExclusivityGraph build_graph(std::vector<Event> events, std::vector<double> weights);
ExclusivityGraph build_graph(std::vector<Event> events);  // unit weights

// The eight S events (A_i a, B_j b), unit weights.
ExclusivityGraph chsh_graph();

std::string export_dot(const WeightedGraph& g);
inline std::string export_dot(const ExclusivityGraph& g) { return export_dot(g.graph()); }

}  // namespace epb

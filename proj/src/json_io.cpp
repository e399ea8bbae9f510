#include "epb/json_io.hpp"

#include <charconv>
#include <cstdio>

namespace epb {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string fingerprint(const Json& canonical) {
  const std::string text = canonical.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json edges_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
  return edges;
}

}  // namespace

Json graph_to_json(const ExclusivityGraph& g) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    vertices.push_back({{"event", g.events()[i].to_string()}, {"weight", g.graph().weight(i)}});
  }
  return {{"vertices", std::move(vertices)}, {"edges", edges_json(g.graph())}};
}

Json graph_to_json(const WeightedGraph& g) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    vertices.push_back({{"label", g.label(i)}, {"weight", g.weight(i)}});
  }
  return {{"vertices", std::move(vertices)}, {"edges", edges_json(g)}};
}

std::string graph_fingerprint(const WeightedGraph& g) { return fingerprint(graph_to_json(g)); }

ParsedGraph graph_from_json(const Json& j, const RegistryPtr& registry) {
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_array()) {
      throw Error(ErrorCode::kParse, "graph JSON needs a \"vertices\" array");
    }
    const auto& vertices = j.at("vertices");
    std::vector<double> weights;
    std::vector<std::string> labels;
    std::vector<Event> events;
    std::size_t event_count = 0;
    for (const auto& v : vertices) {
      weights.push_back(v.value("weight", 1.0));
      if (v.contains("event")) {
        ++event_count;
        events.push_back(Event::parse(v.at("event").get<std::string>(), registry));
        labels.push_back(events.back().to_string());
      } else if (v.contains("label")) {
        labels.push_back(v.at("label").get<std::string>());
      } else {
        throw Error(ErrorCode::kParse, "graph vertex needs \"event\" or \"label\"");
      }
    }
    if (event_count != 0 && event_count != vertices.size()) {
      throw Error(ErrorCode::kParse, "graph vertices must be all events or all labels");
    }

    WeightedGraph listed(labels, weights);
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kParse, "edge must be a pair [i, j]");
        listed.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
      }
    }

    ParsedGraph out;
    if (event_count == 0) {
      out.graph = std::move(listed);
      return out;
    }
    out.exclusivity = build_graph(std::move(events), std::move(weights));
    out.graph = out.exclusivity->graph();
    if (j.contains("edges") && listed.edges() != out.graph.edges()) {
      throw Error(ErrorCode::kInvalidGraph, "listed edges disagree with the exclusivity of the events");
    }
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("graph JSON: ") + e.what());
  }
}

Json behavior_to_json(const Behavior& b) {
  Json contexts = Json::array();
  for (const auto& [ctx, probs] : b.table()) {
    Json p = Json::object();
    for (std::size_t k = 0; k < probs.size(); ++k) p[outcome_key(k, ctx.size())] = probs[k];
    contexts.push_back({{"settings", ctx}, {"probs", std::move(p)}});
  }
  return {{"contexts", std::move(contexts)}};
}

Behavior behavior_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("contexts") || !j.at("contexts").is_array()) {
      throw Error(ErrorCode::kParse, "behavior JSON needs a \"contexts\" array");
    }
    Behavior b;
    for (const auto& c : j.at("contexts")) {
      const auto settings = c.at("settings").get<Context>();
      const auto& probs = c.at("probs");
      if (!probs.is_object()) throw Error(ErrorCode::kParse, "\"probs\" must be an object");
      std::vector<double> values(std::size_t{1} << settings.size(), 0.0);
      std::vector<bool> seen(values.size(), false);
      for (const auto& [key, value] : probs.items()) {
        if (key.size() != settings.size()) throw Error(ErrorCode::kParse, "outcome key '" + key + "' has wrong length");
        const std::size_t idx = parse_outcome_key(key);
        values[idx] = value.get<double>();
        seen[idx] = true;
      }
      for (std::size_t k = 0; k < seen.size(); ++k) {
        if (!seen[k]) throw Error(ErrorCode::kParse, "missing outcome '" + outcome_key(k, settings.size()) + "'");
      }
      b.set_context(settings, std::move(values));
    }
    return b;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("behavior JSON: ") + e.what());
  }
}

Json report_to_json(const BoundReport& r, const WeightedGraph& g) {
  Json cert;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IndependentSetCertificate>) {
          Json labels = Json::array();
          for (auto v : c.vertices) labels.push_back(g.label(v));
          cert = {{"kind", "independent-set"}, {"vertices", c.vertices}, {"events", std::move(labels)}};
        } else if constexpr (std::is_same_v<T, PackingCertificate>) {
          cert = {{"kind", "lp-assignment"},
                  {"assignment", c.assignment},
                  {"cliques", c.cliques},
                  {"clique_multipliers", c.clique_multipliers},
                  {"box_multipliers", c.box_multipliers}};
        } else {
          Json rows = Json::array();
          for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < c.matrix.cols(); ++k) row.push_back(c.matrix(i, k));
            rows.push_back(std::move(row));
          }
          cert = {{"kind", "sdp-matrix"},
                  {"matrix", std::move(rows)},
                  {"trace_multiplier", c.trace_multiplier},
                  {"edge_multipliers", c.edge_multipliers},
                  {"dual_value", c.dual_value},
                  {"primal_residual", c.primal_residual},
                  {"dual_residual", c.dual_residual},
                  {"iterations", c.iterations}};
        }
      },
      r.certificate);
  Json out = {{"method", to_string(r.method)}, {"value", r.value}, {"certificate", std::move(cert)},
              {"fingerprint", r.fingerprint}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

}  // namespace epb

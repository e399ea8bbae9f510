#include "epb/epb.h"

#include <cstring>
#include <optional>
#include <string>

#include "epb/bounds.hpp"
#include "epb/json_io.hpp"
#include "epb/proof_json.hpp"

struct epb_event {
  epb::Event event;
};

struct epb_graph {
  epb::WeightedGraph graph;
  std::optional<epb::ExclusivityGraph> exclusivity;
};

struct epb_behavior {
  epb::Behavior behavior;
};

struct epb_report {
  epb::BoundReport report;
  epb::WeightedGraph graph;
};

namespace {

thread_local std::string last_error;

epb_status status_of(epb::ErrorCode code) {
  using epb::ErrorCode;
  switch (code) {
    case ErrorCode::kParse: return EPB_ERR_PARSE;
    case ErrorCode::kContradiction: return EPB_ERR_CONTRADICTION;
    case ErrorCode::kUnknownObservable: return EPB_ERR_UNKNOWN_OBSERVABLE;
    case ErrorCode::kInvalidRegistry: return EPB_ERR_INVALID_REGISTRY;
    case ErrorCode::kUndefinedContext: return EPB_ERR_UNDEFINED_CONTEXT;
    case ErrorCode::kOutOfRange: return EPB_ERR_OUT_OF_RANGE;
    case ErrorCode::kInvalidBehavior: return EPB_ERR_INVALID_BEHAVIOR;
    case ErrorCode::kDuplicateEvent: return EPB_ERR_DUPLICATE_EVENT;
    case ErrorCode::kLengthMismatch: return EPB_ERR_LENGTH_MISMATCH;
    case ErrorCode::kInvalidGraph: return EPB_ERR_INVALID_GRAPH;
    case ErrorCode::kTooLarge: return EPB_ERR_TOO_LARGE;
    case ErrorCode::kCliqueExplosion: return EPB_ERR_CLIQUE_EXPLOSION;
    case ErrorCode::kInfeasible: return EPB_ERR_INFEASIBLE;
    case ErrorCode::kNumericalFailure: return EPB_ERR_NUMERICAL_FAILURE;
    case ErrorCode::kInvalidNinthEvent: return EPB_ERR_INVALID_NINTH_EVENT;
    case ErrorCode::kNotRepresentable: return EPB_ERR_NOT_REPRESENTABLE;
  }
  return EPB_ERR_INTERNAL;
}

epb_status fail(epb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
epb_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return EPB_OK;
  } catch (const epb::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const epb::Json::exception& e) {
    return fail(EPB_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(EPB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EPB_ERR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define EPB_REQUIRE(cond)                                                                  \
  do {                                                                                     \
    if (!(cond)) return fail(EPB_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);        \
  } while (0)

}  // namespace

extern "C" {

const char* epb_last_error(void) { return last_error.c_str(); }

const char* epb_status_name(epb_status status) {
  switch (status) {
    case EPB_OK: return "ok";
    case EPB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case EPB_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(epb::ErrorCode::kNotRepresentable); ++c) {
    const auto code = static_cast<epb::ErrorCode>(c);
    if (status_of(code) == status) return epb::to_string(code);
  }
  return "Unknown";
}

void epb_string_free(char* s) { delete[] s; }

epb_status epb_event_parse(const char* text, epb_event** out) {
  EPB_REQUIRE(text && out);
  return guarded([&] { *out = new epb_event{epb::Event::parse(text)}; });
}

void epb_event_free(epb_event* e) { delete e; }

epb_status epb_event_to_string(const epb_event* e, char** out) {
  EPB_REQUIRE(e && out);
  return guarded([&] { *out = copy_string(e->event.to_string()); });
}

epb_status epb_event_equivalent(const epb_event* a, const epb_event* b, int* out) {
  EPB_REQUIRE(a && b && out);
  return guarded([&] { *out = epb::are_equivalent(a->event, b->event) ? 1 : 0; });
}

epb_status epb_event_exclusive(const epb_event* a, const epb_event* b, int* exclusive, char** witness) {
  EPB_REQUIRE(a && b && exclusive);
  return guarded([&] {
    const auto r = epb::are_exclusive(a->event, b->event);
    *exclusive = r.exclusive ? 1 : 0;
    if (witness) *witness = r.witness ? copy_string(a->event.registry()->id(*r.witness)) : nullptr;
  });
}

epb_status epb_graph_chsh(epb_graph** out) {
  EPB_REQUIRE(out);
  return guarded([&] {
    auto g = epb::chsh_graph();
    *out = new epb_graph{g.graph(), std::move(g)};
  });
}

epb_status epb_graph_pentagon(epb_graph** out) {
  EPB_REQUIRE(out);
  return guarded([&] { *out = new epb_graph{epb::pentagon(), std::nullopt}; });
}

epb_status epb_graph_from_events(const epb_event* const* events, const double* weights, size_t n, epb_graph** out) {
  EPB_REQUIRE(out && (events || n == 0));
  for (size_t i = 0; i < n; ++i) EPB_REQUIRE(events[i]);
  return guarded([&] {
    std::vector<epb::Event> list;
    list.reserve(n);
    for (size_t i = 0; i < n; ++i) list.push_back(events[i]->event);
    std::vector<double> w = weights ? std::vector<double>(weights, weights + n) : std::vector<double>(n, 1.0);
    auto g = epb::build_graph(std::move(list), std::move(w));
    *out = new epb_graph{g.graph(), std::move(g)};
  });
}

epb_status epb_graph_from_json(const char* json, epb_graph** out) {
  EPB_REQUIRE(json && out);
  return guarded([&] {
    auto parsed = epb::graph_from_json(epb::Json::parse(json));
    *out = new epb_graph{std::move(parsed.graph), std::move(parsed.exclusivity)};
  });
}

void epb_graph_free(epb_graph* g) { delete g; }

size_t epb_graph_vertex_count(const epb_graph* g) { return g ? g->graph.size() : 0; }

size_t epb_graph_edge_count(const epb_graph* g) { return g ? g->graph.edge_count() : 0; }

epb_status epb_graph_to_json(const epb_graph* g, char** out) {
  EPB_REQUIRE(g && out);
  return guarded([&] {
    const auto j = g->exclusivity ? epb::graph_to_json(*g->exclusivity) : epb::graph_to_json(g->graph);
    *out = copy_string(j.dump(2) + "\n");
  });
}

epb_status epb_graph_to_dot(const epb_graph* g, char** out) {
  EPB_REQUIRE(g && out);
  return guarded([&] { *out = copy_string(epb::export_dot(g->graph)); });
}

epb_status epb_bound_compute(const epb_graph* g, epb_method method, epb_report** out) {
  EPB_REQUIRE(g && out);
  epb::BoundMethod m;
  switch (method) {
    case EPB_METHOD_LR: m = epb::BoundMethod::kLocalRealistic; break;
    case EPB_METHOD_FRACTIONAL_PACKING: m = epb::BoundMethod::kFractionalPacking; break;
    case EPB_METHOD_THETA: m = epb::BoundMethod::kTheta; break;
    default: return fail(EPB_ERR_INVALID_ARGUMENT, "unknown bound method");
  }
  return guarded([&] { *out = new epb_report{epb::compute_bound(g->graph, m), g->graph}; });
}

void epb_report_free(epb_report* r) { delete r; }

double epb_report_value(const epb_report* r) { return r ? r->report.value : 0.0; }

epb_status epb_report_verify(const epb_report* r, int* ok, char** problems) {
  EPB_REQUIRE(r && ok);
  return guarded([&] {
    const auto check = epb::verify_certificate(r->graph, r->report);
    *ok = check.ok ? 1 : 0;
    if (problems) *problems = copy_string(epb::Json(check.problems).dump());
  });
}

epb_status epb_report_to_json(const epb_report* r, char** out) {
  EPB_REQUIRE(r && out);
  return guarded([&] { *out = copy_string(epb::report_to_json(r->report, r->graph).dump()); });
}

epb_status epb_behavior_from_json(const char* json, epb_behavior** out) {
  EPB_REQUIRE(json && out);
  return guarded([&] { *out = new epb_behavior{epb::behavior_from_json(epb::Json::parse(json))}; });
}

epb_status epb_behavior_symmetric(double p, epb_behavior** out) {
  EPB_REQUIRE(out);
  return guarded([&] { *out = new epb_behavior{epb::symmetric_behavior(p)}; });
}

epb_status epb_behavior_product(const epb_behavior* first, const epb_behavior* second, epb_behavior** out) {
  EPB_REQUIRE(first && second && out);
  return guarded([&] { *out = new epb_behavior{epb::product_behavior(first->behavior, second->behavior)}; });
}

void epb_behavior_free(epb_behavior* b) { delete b; }

epb_status epb_behavior_chsh(const epb_behavior* b, double* out) {
  EPB_REQUIRE(b && out);
  return guarded([&] { *out = epb::chsh_functional(b->behavior); });
}

epb_status epb_behavior_validate(const epb_behavior* b, double tolerance, int check_no_signaling, char** out) {
  EPB_REQUIRE(b && out && tolerance >= 0.0);
  return guarded([&] {
    epb::ValidationOptions options;
    options.tolerance = tolerance;
    options.check_no_signaling = check_no_signaling != 0;
    epb::Json list = epb::Json::array();
    for (const auto& v : epb::validate_behavior(b->behavior, options)) list.push_back(v.to_string());
    *out = copy_string(list.dump());
  });
}

epb_status epb_behavior_to_json(const epb_behavior* b, char** out) {
  EPB_REQUIRE(b && out);
  return guarded([&] { *out = copy_string(epb::behavior_to_json(b->behavior).dump(2) + "\n"); });
}

epb_status epb_sum_identity_residual(const epb_behavior* b, double* out) {
  EPB_REQUIRE(b && out);
  return guarded([&] { *out = epb::sum_identity_residual(b->behavior); });
}

epb_status epb_table1_json(int verify, const double* p, char** out) {
  EPB_REQUIRE(out);
  return guarded([&] {
    const auto value = p ? std::optional<double>(*p) : std::nullopt;
    *out = copy_string(epb::table1_to_json(verify != 0, value).dump(2) + "\n");
  });
}

epb_status epb_enumerate_json(const char* ninth, char** out) {
  EPB_REQUIRE(ninth && out);
  return guarded([&] { *out = copy_string(epb::enumeration_to_json(epb::Event::parse(ninth)).dump(2) + "\n"); });
}

epb_status epb_prove_json(const char* mode, char** out) {
  EPB_REQUIRE(mode && out);
  const std::string m = mode;
  if (m != "symmetric" && m != "general") return fail(EPB_ERR_INVALID_ARGUMENT, "mode must be symmetric or general");
  return guarded([&] {
    const auto report = m == "symmetric" ? epb::symmetric_bound() : epb::general_bound();
    *out = copy_string(epb::proof_to_json(report).dump(2) + "\n");
  });
}

epb_status epb_identity_check_json(uint64_t seed, size_t samples, char** out) {
  EPB_REQUIRE(out);
  return guarded([&] {
    epb::IdentityCheckOptions options;
    options.seed = seed;
    options.samples = samples;
    *out = copy_string(epb::identity_check_to_json(options).dump(2) + "\n");
  });
}

}  // extern "C"

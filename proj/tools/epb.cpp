// Command-line front end. Talks to the library only through the C API.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epb/epb.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

// Library failures surface as this exception and map to the usage/input exit code.
struct ApiError {
  epb_status status;
  std::string message;
};

void check(epb_status status) {
  if (status != EPB_OK) throw ApiError{status, epb_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  epb_string_free(s);
  return out;
}

struct GraphDeleter {
  void operator()(epb_graph* g) const { epb_graph_free(g); }
};
struct ReportDeleter {
  void operator()(epb_report* r) const { epb_report_free(r); }
};
using GraphPtr = std::unique_ptr<epb_graph, GraphDeleter>;
using ReportPtr = std::unique_ptr<epb_report, ReportDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError{EPB_ERR_INVALID_ARGUMENT, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiError{EPB_ERR_INVALID_ARGUMENT, "cannot write '" + path + "'"};
}

std::string fixed(double v, int places = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::string graph = "chsh";
  std::string graph_file;
  std::string method = "all";
  std::string format = "text";
};

int run_bounds(const BoundsArgs& args) {
  epb_graph* raw = nullptr;
  if (!args.graph_file.empty()) {
    check(epb_graph_from_json(read_file(args.graph_file).c_str(), &raw));
  } else if (args.graph == "chsh") {
    check(epb_graph_chsh(&raw));
  } else {
    check(epb_graph_pentagon(&raw));
  }
  GraphPtr graph(raw);

  std::vector<std::pair<epb_method, std::string>> methods;
  if (args.method == "lr" || args.method == "all") methods.emplace_back(EPB_METHOD_LR, "lr");
  if (args.method == "fp" || args.method == "all") methods.emplace_back(EPB_METHOD_FRACTIONAL_PACKING, "fractional_packing");
  if (args.method == "theta" || args.method == "all") methods.emplace_back(EPB_METHOD_THETA, "theta");

  Json out = Json::object();
  out["graph"] = {{"source", args.graph_file.empty() ? args.graph : args.graph_file},
                  {"vertices", epb_graph_vertex_count(graph.get())},
                  {"edges", epb_graph_edge_count(graph.get())}};
  Json reports = Json::array();
  bool all_ok = true;
  std::vector<std::string> problems;
  for (const auto& [method, key] : methods) {
    epb_report* r = nullptr;
    check(epb_bound_compute(graph.get(), method, &r));
    ReportPtr report(r);
    int ok = 0;
    char* issues = nullptr;
    check(epb_report_verify(report.get(), &ok, &issues));
    for (const auto& p : Json::parse(take(issues))) problems.push_back(key + ": " + p.get<std::string>());
    all_ok = all_ok && ok;
    out[key] = epb_report_value(report.get());
    Json rj = Json::parse(take([&] {
      char* s = nullptr;
      check(epb_report_to_json(report.get(), &s));
      return s;
    }()));
    rj["certificate_verified"] = ok != 0;
    reports.push_back(std::move(rj));
  }
  if (methods.size() == 3) {
    const double slack = 1e-6;
    const bool ordered = out["lr"].get<double>() <= out["theta"].get<double>() + slack &&
                         out["theta"].get<double>() <= out["fractional_packing"].get<double>() + slack;
    out["ordering_ok"] = ordered;
    all_ok = all_ok && ordered;
    if (!ordered) problems.push_back("lr <= theta <= fractional_packing violated");
  }
  out["reports"] = std::move(reports);
  out["verified"] = all_ok;

  if (args.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "graph: " << out["graph"]["source"].get<std::string>() << " (" << out["graph"]["vertices"]
              << " vertices, " << out["graph"]["edges"] << " edges)\n";
    for (const auto& [method, key] : methods) std::cout << key << ": " << fixed(out[key].get<double>()) << "\n";
    std::cout << "certificates: " << (all_ok ? "verified" : "FAILED") << "\n";
  }
  for (const auto& p : problems) std::cerr << "epb: " << p << "\n";
  return all_ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

void print_set_text(const Json& set) {
  std::cout << "set " << set["name"].get<std::string>() << "\n";
  for (const auto& e : set["events"]) {
    std::cout << "  " << e["label"].get<std::string>() << "  " << e["event"].get<std::string>();
    if (e.contains("probability")) std::cout << "  " << e["probability"].get<std::string>();
    if (e.contains("value")) std::cout << " = " << fixed(e["value"].get<double>());
    std::cout << "\n";
  }
  if (set.contains("verification")) {
    const auto& v = set["verification"];
    std::cout << "  exclusive pairs: " << v["pairs_checked"].get<std::size_t>() - v["non_exclusive_pairs"].size()
              << "/" << v["pairs_checked"] << ", in " << v["in_count"] << " / out " << v["out_count"] << ": "
              << (v["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    for (const auto& f : v["non_exclusive_pairs"]) {
      std::cout << "  not exclusive: " << f[0].get<std::string>() << ", " << f[1].get<std::string>() << "\n";
    }
  }
}

int run_table1(bool verify, std::optional<double> p, const std::string& format) {
  char* s = nullptr;
  check(epb_table1_json(verify ? 1 : 0, p ? &*p : nullptr, &s));
  const std::string text = take(s);
  const Json j = Json::parse(text);
  if (format == "json") {
    std::cout << text;
  } else {
    for (const auto& set : j["sets"]) print_set_text(set);
    if (verify) {
      std::cout << "exclusivity checks: " << j["exclusivity_checks"] << "\n";
      std::cout << "verified: " << (j["verified"].get<bool>() ? "yes" : "no") << "\n";
    }
  }
  return (!verify || j["verified"].get<bool>()) ? kExitOk : kExitVerification;
}

int run_enumerate(const std::string& ninth, const std::string& format) {
  char* s = nullptr;
  check(epb_enumerate_json(ninth.c_str(), &s));
  const std::string text = take(s);
  const Json j = Json::parse(text);
  if (format == "json") {
    std::cout << text;
  } else {
    std::cout << "ninth event: " << j["ninth"].get<std::string>() << "\n";
    std::cout << "sets found: " << j["count"] << "\n";
    for (const auto& set : j["sets"]) {
      print_set_text(set);
      if (!set["table1_set"].is_null()) std::cout << "  matches table set " << set["table1_set"].get<std::string>() << "\n";
    }
  }
  return j["verified"].get<bool>() ? kExitOk : kExitVerification;
}

int run_prove(const std::string& mode, const std::string& format) {
  char* s = nullptr;
  check(epb_prove_json(mode.c_str(), &s));
  const std::string text = take(s);
  const Json j = Json::parse(text);
  if (format == "json") {
    std::cout << text;
  } else {
    std::cout << "mode: " << j["mode"].get<std::string>() << "\n";
    for (const auto& step : j["steps"]) std::cout << "  " << step.get<std::string>() << "\n";
    std::cout << "aggregate: " << j["aggregate"].get<std::string>() << "\n";
    std::cout << "reduced: " << j["reduced_polynomial"]["text"].get<std::string>() << " <= 0\n";
    std::cout << "bound: " << j["variable"].get<std::string>() << " <= " << j["bound"]["exact"].get<std::string>()
              << " = " << j["bound"]["decimal"].get<std::string>() << "\n";
    std::cout << "S <= " << j["s_bound"]["exact"].get<std::string>() << " = "
              << j["s_bound"]["decimal"].get<std::string>() << "\n";
    std::cout << "assumptions:\n";
    for (const auto& a : j["assumptions"]) {
      std::cout << "  [" << a["id"].get<std::string>() << "] " << a["statement"].get<std::string>() << "\n";
    }
    std::cout << "verified: " << (j["verified"].get<bool>() ? "yes" : "no") << "\n";
  }
  return j["verified"].get<bool>() ? kExitOk : kExitVerification;
}

int run_graph(const std::string& format, const std::string& out_path) {
  epb_graph* raw = nullptr;
  check(epb_graph_chsh(&raw));
  GraphPtr graph(raw);
  char* s = nullptr;
  check(format == "json" ? epb_graph_to_json(graph.get(), &s) : epb_graph_to_dot(graph.get(), &s));
  write_output(take(s), out_path);
  return kExitOk;
}

int run_identity_check(std::uint64_t seed, std::size_t samples, const std::string& format) {
  char* s = nullptr;
  check(epb_identity_check_json(seed, samples, &s));
  const std::string text = take(s);
  const Json j = Json::parse(text);
  if (format == "json") {
    std::cout << text;
  } else {
    std::cout << "seed: " << j["seed"] << "\n";
    std::cout << "random behaviors: " << j["samples"] << "\n";
    std::cout << "symmetric family points: " << j["symmetric"].size() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", j["max_residual"].get<double>());
    std::cout << "max residual: " << buf << " (tolerance " << j["tolerance"].get<double>() << ")\n";
    std::cout << "passed: " << (j["passed"].get<bool>() ? "yes" : "no") << "\n";
  }
  return j["passed"].get<bool>() ? kExitOk : kExitVerification;
}

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("EPB_SEED");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') {
    throw ApiError{EPB_ERR_INVALID_ARGUMENT, std::string("EPB_SEED is not an unsigned integer: '") + env + "'"};
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exclusivity-principle bounds for the CHSH scenario"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const std::vector<std::string> text_json = {"text", "json"};

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Local-realistic, fractional packing and theta bounds of a graph");
  auto* graph_opt = bounds_cmd->add_option("--graph", bounds.graph, "Built-in graph")
                        ->check(CLI::IsMember({"chsh", "pentagon"}))
                        ->capture_default_str();
  bounds_cmd->add_option("--graph-file", bounds.graph_file, "Graph JSON file")->excludes(graph_opt);
  bounds_cmd->add_option("--method", bounds.method, "Bound to compute")
      ->check(CLI::IsMember({"lr", "fp", "theta", "all"}))
      ->capture_default_str();
  bounds_cmd->add_option("--format", bounds.format)->check(CLI::IsMember(text_json))->capture_default_str();

  bool verify = false;
  std::optional<double> p;
  std::string table_format = "text";
  auto* table_cmd = app.add_subcommand("table1", "Print the four nine-event sets");
  table_cmd->add_flag("--verify", verify, "Check pairwise exclusivity and the in/out pattern");
  table_cmd->add_option("--p", p, "Evaluate product-event probabilities at this p in [0, 1/2]")
      ->check(CLI::Range(0.0, 0.5));
  table_cmd->add_option("--format", table_format)->check(CLI::IsMember(text_json))->capture_default_str();

  std::string ninth;
  std::string enumerate_format = "text";
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Find every nine-event set for a parity event");
  enumerate_cmd->add_option("--ninth", ninth, "Parity event, e.g. \"A0A'0- A1A'1-\"")->required();
  enumerate_cmd->add_option("--format", enumerate_format)->check(CLI::IsMember(text_json))->capture_default_str();

  std::string mode = "general";
  std::string prove_format = "text";
  auto* prove_cmd = app.add_subcommand("prove", "Derive the bound 2 + sqrt(2) exactly");
  prove_cmd->add_option("--mode", mode)->check(CLI::IsMember({"symmetric", "general"}))->capture_default_str();
  prove_cmd->add_option("--format", prove_format)->check(CLI::IsMember(text_json))->capture_default_str();

  std::string scenario = "chsh";
  std::string graph_format = "dot";
  std::string out_path;
  auto* graph_cmd = app.add_subcommand("graph", "Export the exclusivity graph");
  graph_cmd->add_option("--scenario", scenario)->check(CLI::IsMember({"chsh"}))->capture_default_str();
  graph_cmd->add_option("--format", graph_format)->check(CLI::IsMember({"dot", "json"}))->capture_default_str();
  graph_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  std::string identity_format = "text";
  auto* identity_cmd = app.add_subcommand("identity-check", "Check the sum identity on random behaviors");
  identity_cmd->add_option("--samples", samples)->check(CLI::Range(std::size_t{0}, std::size_t{1000000}))
      ->capture_default_str();
  identity_cmd->add_option("--seed", seed, "Generator seed (default: EPB_SEED, then 20140312)");
  identity_cmd->add_option("--format", identity_format)->check(CLI::IsMember(text_json))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds_cmd) return run_bounds(bounds);
    if (*table_cmd) return run_table1(verify, p, table_format);
    if (*enumerate_cmd) return run_enumerate(ninth, enumerate_format);
    if (*prove_cmd) return run_prove(mode, prove_format);
    if (*graph_cmd) return run_graph(graph_format, out_path);
    if (*identity_cmd) {
      std::uint64_t s = 20140312;
      if (auto env = seed_from_env()) s = *env;
      if (seed) s = *seed;
      return run_identity_check(s, samples, identity_format);
    }
  } catch (const ApiError& e) {
    std::cerr << "epb: " << epb_status_name(e.status) << ": " << e.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "epb: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

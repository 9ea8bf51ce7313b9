#include <charconv>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mnroute/algorithms.hpp"
#include "mnroute/experiment.hpp"
#include "mnroute/gta.hpp"
#include "mnroute/metric_io.hpp"
#include "mnroute/topology_io.hpp"

using namespace mnroute;
using nlohmann::json;

namespace {

constexpr int kFound = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

NodeId resolve_node(const Graph& g, const std::string& name) {
  if (auto v = g.find_node(name)) return *v;
  std::uint32_t index = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec == std::errc{} && ptr == name.data() + name.size() && index < g.node_count() &&
      !g.label(NodeId{index})) {
    return NodeId{index};
  }
  throw std::invalid_argument("unknown node '" + name + "'");
}

/// The graph file plus metrics from --metrics or, failing that, the graph file.
/// A given bound fills in every global constraint.
std::pair<Graph, MetricSet> load_problem(const std::string& graph_file,
                                         const std::string& metrics_file,
                                         std::optional<double> bound) {
  GraphDocument doc = load_any_graph(graph_file);
  json metrics_json;
  if (!metrics_file.empty()) {
    metrics_json = json::parse(read_text(metrics_file));
  } else if (doc.metrics) {
    metrics_json = metric_set_to_json(*doc.metrics);
  } else {
    throw std::invalid_argument("no metrics given and none stored in " + graph_file);
  }
  if (bound) {
    for (auto& m : metrics_json.at("metrics")) {
      if (m.value("role", "") == "global_constraint") m["bound"] = *bound;
    }
  }
  return {std::move(doc.graph), metric_set_from_json(metrics_json)};
}

json result_json(const Graph& g, const RoutingRequest& request, const RoutingResult& result) {
  json j{{"status", result.ok() ? "found" : "infeasible"},
         {"settled_labels", result.stats.settled_labels},
         {"queue_pushes", result.stats.queue_pushes}};
  if (result.ok()) {
    json nodes = json::array();
    for (NodeId v : result.path().nodes()) nodes.push_back(g.node_name(v));
    j["path"] = nodes;
    json values = json::object();
    for (std::size_t i = 0; i < request.metrics.size(); ++i) {
      values[request.metrics[i].name()] = result.value(i);
    }
    j["values"] = values;
  }
  return j;
}

int report(const Graph& g, const RoutingRequest& request, const RoutingResult& result) {
  std::cout << result_json(g, request, result).dump(2) << "\n";
  return result.ok() ? kFound : kInfeasible;
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension(".provenance.json");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Routing with context-dependent link metrics"};
  app.require_subcommand(1);

  std::string graph_file, metrics_file, algo, src, dst, out, config_file;
  std::size_t gta = 0;
  std::size_t applications = 1;
  bool sink_edges = false;
  std::optional<double> bound;

  auto* route = app.add_subcommand("route", "Solve one routing request");
  route->add_option("--graph", graph_file, "Graph JSON or GraphML file")->required();
  route->add_option("--metrics", metrics_file, "Metric set JSON file");
  route->add_option("--algo", algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"dijkstra", "astar", "ebd", "cbf", "larac", "aprune"}));
  route->add_option("--gta", gta, "Transformation applications before searching");
  route->add_option("--src", src, "Source node")->required();
  route->add_option("--dst", dst, "Destination node")->required();
  route->add_option("--bound", bound, "Bound for global constraint metrics");

  auto* transform = app.add_subcommand("transform", "Transform a graph to order-0 metrics");
  transform->add_option("--graph", graph_file, "Graph JSON or GraphML file")->required();
  transform->add_option("--metrics", metrics_file, "Metric set JSON file");
  transform->add_option("--n", applications, "Number of applications")->check(CLI::PositiveNumber);
  transform->add_option("--out", out, "Output graph JSON; provenance goes next to it")->required();
  transform->add_flag("--sink-edges", sink_edges, "Add the multipath gadget (single application)");

  auto* experiment = app.add_subcommand("experiment", "Run an evaluation config");
  experiment->add_option("--config", config_file, "Experiment config JSON")->required();
  experiment->add_option("--out", out, "Output directory")->required();

  auto* exhaustive = app.add_subcommand("oracle", "Exhaustive optimum over simple paths");
  exhaustive->add_option("--graph", graph_file, "Graph JSON or GraphML file")->required();
  exhaustive->add_option("--metrics", metrics_file, "Metric set JSON file");
  exhaustive->add_option("--src", src, "Source node")->required();
  exhaustive->add_option("--dst", dst, "Destination node")->required();
  exhaustive->add_option("--bound", bound, "Bound for global constraint metrics");

  std::string fixture_name;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write a built-in example graph with its metrics");
  fixture_cmd->add_option("--name", fixture_name, "fig1 or fig2")->required();
  fixture_cmd->add_option("--out", out, "Output graph JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }

  try {
    if (*route) {
      auto [g, metrics] = load_problem(graph_file, metrics_file, bound);
      const RoutingRequest request{resolve_node(g, src), resolve_node(g, dst), metrics};
      const AlgorithmSpec spec{algo, gta};
      std::optional<TransformedGraph> tg;
      if (gta) tg = gta_n(g, gta);
      return report(g, request, run_algorithm(spec, g, tg ? &*tg : nullptr, request));
    }
    if (*transform) {
      auto [g, metrics] = load_problem(graph_file, metrics_file, std::nullopt);
      TransformedGraph tg(g);
      for (std::size_t i = 0; i < applications; ++i) tg = gta_once(tg);
      tg = add_sinks(tg);
      if (sink_edges) tg = add_sink_edges(tg);
      MetricSet lifted;
      for (const auto& m : metrics.all()) lifted.add(materialize(tg, lift_metric(tg, m)));
      write_graph(out, tg.graph(), &lifted);
      write_text(sidecar_path(out), provenance_to_json(provenance_of(tg)).dump(2) + "\n");
      std::cout << json{{"nodes", tg.graph().node_count()},
                        {"edges", tg.graph().edge_count()},
                        {"graph", out},
                        {"provenance", sidecar_path(out).string()}}
                       .dump(2)
                << "\n";
      return kFound;
    }
    if (*experiment) {
      const ExperimentConfig config = load_experiment_config(config_file);
      const auto topologies = load_experiment_topologies(config);
      const ExperimentReport result = run_experiment(config, topologies);
      std::vector<ImpactEntry> impact;
      if (config.impact) impact = impact_matrix(config, topologies);
      emit_report(result, impact, out);
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& c : result.cells) {
        if (!seen.insert({c.algorithm, c.order}).second) continue;
        const CellResult total = result.aggregate(c.algorithm, c.order);
        std::cout << total.algorithm << " order " << total.order
                  << ": optimality " << total.optimality_ratio() << ", completeness "
                  << total.completeness_ratio() << " over " << total.benchmark_solvable
                  << " requests\n";
      }
      for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
      for (const auto& s : result.skipped_topologies) std::cout << "skipped: " << s << "\n";
      return kFound;
    }
    if (*fixture_cmd) {
      const Fixture f = fixture(fixture_name);
      write_graph(out, f.graph, &f.metrics);
      return kFound;
    }
    if (*exhaustive) {
      auto [g, metrics] = load_problem(graph_file, metrics_file, bound);
      const RoutingRequest request{resolve_node(g, src), resolve_node(g, dst), metrics};
      return report(g, request, oracle(g, request));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

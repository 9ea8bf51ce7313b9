#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mnroute/algorithms.hpp"
#include "mnroute/metrics.hpp"
#include "mnroute/topology_io.hpp"

namespace mnroute {

/// Problem families of the evaluation harness.
enum class Problem {
  kShortestPath,  ///< one random optimization metric of the tested order
  kConstrained,   ///< order-0 optimization plus one random global constraint of the tested order
  kLocal,         ///< order-0 optimization plus one random local constraint of the tested order
};

std::string to_string(Problem problem);
Problem parse_problem(std::string_view text);

/// "astar", "astar-gta" (one application), "larac-gta2", ...
struct AlgorithmSpec {
  std::string base;  ///< dijkstra | astar | ebd | cbf | larac | aprune
  std::size_t gta = 0;

  std::string label() const;
  static AlgorithmSpec parse(std::string_view text);
  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

struct ExperimentConfig {
  Problem problem = Problem::kShortestPath;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<MetricOrder> orders{MetricOrder::finite(0), MetricOrder::finite(1),
                                  MetricOrder::infinite()};
  std::size_t requests = 200;  ///< per topology and order
  std::size_t warmup = 50;
  std::size_t repetitions = 1;  ///< runtime samples per request and algorithm
  bool measure = true;          ///< false skips runtime sampling entirely
  std::uint64_t seed = 1;
  std::filesystem::path topology_dir;  ///< relative paths resolve against the config file
  std::vector<std::string> fixtures;   ///< fixture names run with their own request
  TopologyFilter filter = TopologyFilter::shortest_path();
  std::size_t max_topologies = 0;  ///< 0 keeps every filtered topology
  OracleLimits oracle;
  double local_threshold = 1.7;  ///< threshold of the random local constraint
  /// Beyond the oracle, the bound range ends at this factor times the
  /// constraint value of the unconstrained optimum.
  double bound_slack = 3.0;
  bool impact = false;  ///< also emit the impact matrix

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Outcome of one algorithm on one request, against the benchmark.
struct Score {
  bool benchmark_solvable = false;
  bool solved = false;
  bool optimal = false;
};

/// Ratios of one (topology, algorithm, order) cell.
struct CellResult {
  std::string topology;
  std::string algorithm;
  std::string order;
  std::size_t requests = 0;
  std::size_t benchmark_solvable = 0;
  std::size_t solved = 0;   ///< among benchmark-solvable requests
  std::size_t optimal = 0;  ///< among benchmark-solvable requests
  std::vector<double> runtimes;
  std::string skipped;  ///< reason, empty when the cell ran

  double optimality_ratio() const;
  double completeness_ratio() const;
};

struct ExperimentReport {
  Problem problem = Problem::kShortestPath;
  std::vector<CellResult> cells;  ///< sorted by (topology, algorithm, order)
  std::vector<std::string> notes;
  std::vector<std::string> skipped_topologies;

  const CellResult* find(std::string_view topology, std::string_view algorithm,
                         std::string_view order) const;
  /// Cells of one algorithm and order, merged over topologies.
  CellResult aggregate(std::string_view algorithm, std::string_view order) const;
};

/// A named graph the harness runs on; fixtures carry their own request.
struct ExperimentTopology {
  std::string name;
  Graph graph;
  std::optional<RoutingRequest> request;
};

std::vector<ExperimentTopology> zoo_topologies(const std::vector<TopologyRecord>& records);
ExperimentTopology fixture_topology(std::string_view name);

/// Topologies named by the config: the filtered directory contents, capped
/// at max_topologies, followed by the fixtures.
std::vector<ExperimentTopology> load_experiment_topologies(const ExperimentConfig& config);

/// Runs every configured algorithm on seeded requests for every topology and
/// order. Benchmark: the oracle on graphs within the oracle's node limit,
/// A*Prune otherwise.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::vector<ExperimentTopology>& topologies);

/// Runs one algorithm on a request, with `transformed` supplying the graph
/// for GTA variants.
RoutingResult run_algorithm(const AlgorithmSpec& algorithm, const Graph& graph,
                            const TransformedGraph* transformed, const RoutingRequest& request);

/// Reads a config file; a relative topology_dir resolves against its directory.
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

/// Scores `result` against `benchmark` with relative tolerance 1e-9.
Score score(const RoutingRequest& request, const RoutingResult& benchmark,
            const RoutingResult& result);

/// `repetitions` wall-clock samples of `fn` after `warmup` unrecorded calls.
/// Samples are clamped to the clock resolution so they stay positive.
std::vector<double> measure_runtime(const std::function<void()>& fn, std::size_t warmup,
                                    std::size_t repetitions);

/// Sorted values with cumulative fractions; ties collapse into one step.
struct EcdfPoint {
  double value;
  double fraction;
};
std::vector<EcdfPoint> ecdf(std::vector<double> samples);

/// One entry of the impact matrix: how an algorithm relying on optimal
/// substructure behaves for a metric role and order.
struct ImpactEntry {
  Role role;
  MetricOrder order;
  std::string algorithm;
  bool complete = false;
  bool optimal = false;
  std::size_t requests = 0;
};

/// The classification expected from theory: everything holds for order 0,
/// optimization stays complete, constraints lose both properties.
ImpactEntry expected_impact(Role role, MetricOrder order);

/// Observes the matrix on `topologies` with dijkstra (optimization and local
/// constraints) and cbf (global constraints) against the oracle.
std::vector<ImpactEntry> impact_matrix(const ExperimentConfig& config,
                                       const std::vector<ExperimentTopology>& topologies);

/// Writes ratios.csv, report.json, one ECDF file per (algorithm, order)
/// runtime and ratio distribution, and impact.csv when `impact` is non-empty.
/// Everything except runtime data is byte-stable for identical input.
void emit_report(const ExperimentReport& report, const std::vector<ImpactEntry>& impact,
                 const std::filesystem::path& dir);

std::string ratios_csv(const ExperimentReport& report);
std::string ecdf_csv(const std::vector<EcdfPoint>& points);
std::string impact_csv(const std::vector<ImpactEntry>& impact);
nlohmann::json report_to_json(const ExperimentReport& report);

}  // namespace mnroute

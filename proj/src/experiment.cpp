#include "mnroute/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "mnroute/gta.hpp"

namespace mnroute {

using nlohmann::json;

std::string to_string(Problem problem) {
  switch (problem) {
    case Problem::kShortestPath:
      return "sp";
    case Problem::kConstrained:
      return "csp";
    case Problem::kLocal:
      return "local";
  }
  return "?";
}

Problem parse_problem(std::string_view text) {
  if (text == "sp") return Problem::kShortestPath;
  if (text == "csp") return Problem::kConstrained;
  if (text == "local") return Problem::kLocal;
  throw std::invalid_argument("unknown problem '" + std::string(text) + "'");
}

namespace {

const std::vector<std::string> kAlgorithms{"dijkstra", "astar", "ebd", "cbf", "larac", "aprune"};

}  // namespace

std::string AlgorithmSpec::label() const {
  if (gta == 0) return base;
  return base + "-gta" + (gta == 1 ? "" : std::to_string(gta));
}

AlgorithmSpec AlgorithmSpec::parse(std::string_view text) {
  AlgorithmSpec spec;
  const auto dash = text.find("-gta");
  spec.base = std::string(text.substr(0, dash));
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), spec.base) == kAlgorithms.end()) {
    throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
  }
  if (dash != std::string_view::npos) {
    const std::string_view count = text.substr(dash + 4);
    spec.gta = 1;
    if (!count.empty()) {
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
      if (ec != std::errc{} || ptr != count.data() + count.size() || n == 0) {
        throw std::invalid_argument("bad GTA count in '" + std::string(text) + "'");
      }
      spec.gta = n;
    }
  }
  return spec;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.problem = parse_problem(j.value("problem", "sp"));
  for (const auto& a : j.at("algorithms")) c.algorithms.push_back(AlgorithmSpec::parse(a.get<std::string>()));
  if (j.contains("orders")) {
    c.orders.clear();
    for (const auto& o : j.at("orders")) {
      c.orders.push_back(o.is_string() ? MetricOrder::parse(o.get<std::string>())
                                       : MetricOrder::finite(o.get<std::uint32_t>()));
    }
  }
  c.requests = j.value("requests", c.requests);
  c.warmup = j.value("warmup", c.warmup);
  c.repetitions = j.value("repetitions", c.repetitions);
  c.measure = j.value("measure", c.measure);
  c.seed = j.value("seed", c.seed);
  c.topology_dir = j.value("topology_dir", std::string());
  c.fixtures = j.value("fixtures", c.fixtures);
  if (j.contains("filter")) {
    const json& f = j.at("filter");
    c.filter.min_nodes = f.value("min_nodes", c.filter.min_nodes);
    c.filter.max_nodes = f.value("max_nodes", c.filter.max_nodes);
    c.filter.max_links = f.value("max_links", c.filter.max_links);
    c.filter.require_connected = f.value("require_connected", c.filter.require_connected);
  }
  c.max_topologies = j.value("max_topologies", c.max_topologies);
  if (j.contains("oracle")) {
    c.oracle.max_nodes = j.at("oracle").value("max_nodes", c.oracle.max_nodes);
    c.oracle.max_paths = j.at("oracle").value("max_paths", c.oracle.max_paths);
  }
  c.local_threshold = j.value("local_threshold", c.local_threshold);
  c.bound_slack = j.value("bound_slack", c.bound_slack);
  c.impact = j.value("impact", c.impact);

  if (c.algorithms.empty()) throw std::invalid_argument("config lists no algorithms");
  if (c.orders.empty()) throw std::invalid_argument("config lists no metric orders");
  if (c.requests == 0) throw std::invalid_argument("requests must be at least 1");
  if (c.repetitions == 0) throw std::invalid_argument("repetitions must be at least 1");
  if (c.filter.min_nodes == 0 || c.filter.max_nodes == 0 || c.filter.max_links == 0) {
    throw std::invalid_argument("filter bounds must be positive");
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json algos = json::array();
  for (const auto& a : algorithms) algos.push_back(a.label());
  json ords = json::array();
  for (auto o : orders) {
    ords.push_back(o.is_infinite() ? json("inf") : json(o.depth()));
  }
  return json{{"problem", to_string(problem)},
              {"algorithms", algos},
              {"orders", ords},
              {"requests", requests},
              {"warmup", warmup},
              {"repetitions", repetitions},
              {"measure", measure},
              {"seed", seed},
              {"topology_dir", topology_dir.string()},
              {"fixtures", fixtures},
              {"filter",
               {{"min_nodes", filter.min_nodes},
                {"max_nodes", filter.max_nodes},
                {"max_links", filter.max_links},
                {"require_connected", filter.require_connected}}},
              {"max_topologies", max_topologies},
              {"oracle", {{"max_nodes", oracle.max_nodes}, {"max_paths", oracle.max_paths}}},
              {"local_threshold", local_threshold},
              {"bound_slack", bound_slack},
              {"impact", impact}};
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  json j;
  try {
    j = json::parse(read_text(file));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  ExperimentConfig c = ExperimentConfig::from_json(j);
  if (!c.topology_dir.empty() && c.topology_dir.is_relative()) {
    c.topology_dir = file.parent_path() / c.topology_dir;
  }
  return c;
}

double CellResult::optimality_ratio() const {
  return benchmark_solvable ? static_cast<double>(optimal) / benchmark_solvable : 1.0;
}

double CellResult::completeness_ratio() const {
  return benchmark_solvable ? static_cast<double>(solved) / benchmark_solvable : 1.0;
}

const CellResult* ExperimentReport::find(std::string_view topology, std::string_view algorithm,
                                         std::string_view order) const {
  for (const auto& c : cells) {
    if (c.topology == topology && c.algorithm == algorithm && c.order == order) return &c;
  }
  return nullptr;
}

CellResult ExperimentReport::aggregate(std::string_view algorithm, std::string_view order) const {
  CellResult total;
  total.topology = "*";
  total.algorithm = algorithm;
  total.order = order;
  for (const auto& c : cells) {
    if (c.algorithm != algorithm || c.order != order || !c.skipped.empty()) continue;
    total.requests += c.requests;
    total.benchmark_solvable += c.benchmark_solvable;
    total.solved += c.solved;
    total.optimal += c.optimal;
    total.runtimes.insert(total.runtimes.end(), c.runtimes.begin(), c.runtimes.end());
  }
  return total;
}

std::vector<ExperimentTopology> zoo_topologies(const std::vector<TopologyRecord>& records) {
  std::vector<ExperimentTopology> out;
  for (const auto& r : records) out.push_back(ExperimentTopology{r.name, r.graph, std::nullopt});
  return out;
}

ExperimentTopology fixture_topology(std::string_view name) {
  Fixture f = fixture(name);
  RoutingRequest request{f.source, f.destination, f.metrics};
  return ExperimentTopology{std::string(name), std::move(f.graph), std::move(request)};
}

std::vector<ExperimentTopology> load_experiment_topologies(const ExperimentConfig& config) {
  std::vector<ExperimentTopology> out;
  if (!config.topology_dir.empty()) {
    auto records = apply_filter(load_topology_dir(config.topology_dir), config.filter);
    if (config.max_topologies && records.size() > config.max_topologies) {
      records.resize(config.max_topologies);
    }
    out = zoo_topologies(records);
  }
  for (const auto& name : config.fixtures) out.push_back(fixture_topology(name));
  return out;
}

namespace {

double optimization_cost(const RoutingRequest& request, const RoutingResult& result) {
  return result.value(*request.metrics.optimization_index());
}

Heuristic base_heuristic(const Graph& graph, const RoutingRequest& request) {
  return hop_count_heuristic(graph, request.destination,
                             global_min_edge_value(graph, request.metrics.optimization()));
}

RoutingResult run_base(const std::string& base, const Graph& graph, const RoutingRequest& request,
                       const Heuristic* heuristic) {
  if (base == "dijkstra") return dijkstra(graph, request);
  if (base == "astar") {
    return heuristic ? a_star(graph, request, *heuristic)
                     : a_star(graph, request, base_heuristic(graph, request));
  }
  if (base == "ebd") return edge_based_dijkstra(graph, request);
  if (base == "cbf") return cbf(graph, request);
  if (base == "larac") return larac(graph, request);
  if (base == "aprune") return a_star_prune(graph, request);
  throw std::invalid_argument("unknown algorithm '" + base + "'");
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Everything drawn for one request; identical across metric orders.
struct RequestDraw {
  NodeId source;
  NodeId destination;
  std::uint64_t optimization_seed = 0;
  std::uint64_t constraint_seed = 0;
  double bound_position = 0.0;
};

RequestDraw draw_request(std::uint64_t seed, std::string_view topology, std::size_t index,
                         std::size_t nodes) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(topology)),
                    static_cast<std::uint32_t>(fnv1a(topology) >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  RequestDraw d;
  d.source = NodeId{rng() % nodes};
  std::size_t dst = rng() % (nodes - 1);
  if (dst >= d.source.index()) ++dst;
  d.destination = NodeId{dst};
  d.optimization_seed = rng();
  d.constraint_seed = rng();
  d.bound_position = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return d;
}

struct Benchmark {
  std::string name;
  std::function<RoutingResult(const RoutingRequest&)> solve;
};

/// Range of the constraint metric over the request's paths, used to draw a
/// bound. Returns nullopt when no path exists.
std::optional<std::pair<double, double>> constraint_range(const Graph& graph,
                                                          const ExperimentConfig& config,
                                                          bool use_oracle,
                                                          const RoutingRequest& unconstrained,
                                                          const MetricSpec& constraint) {
  if (use_oracle) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    enumerate_walks(graph, unconstrained.source, unconstrained.destination, config.oracle,
                    WalkKind::kSimplePaths, [&](std::span<const EdgeId> walk) {
                      double acc = 0.0;
                      for (std::size_t i = 0; i < walk.size(); ++i) {
                        acc += constraint.evaluate_unchecked(walk[i], walk.first(i));
                      }
                      lo = std::min(lo, acc);
                      hi = std::max(hi, acc);
                    });
    if (hi < lo) return std::nullopt;
    return std::pair{lo, hi};
  }
  const MetricSpec as_cost = constraint.with_role(Role::kGlobalOptimization);
  const RoutingResult min_run = a_star_prune(
      graph, RoutingRequest{unconstrained.source, unconstrained.destination, MetricSet{as_cost}});
  if (!min_run.ok()) return std::nullopt;
  const RoutingResult opt_run = a_star_prune(graph, unconstrained);
  const double at_optimum = combine(graph, constraint, opt_run.path());
  return std::pair{min_run.value(0), std::max(min_run.value(0), config.bound_slack * at_optimum)};
}

std::string request_order_name(const MetricSet& metrics) {
  std::size_t depth = 0;
  for (const auto& m : metrics.all()) {
    if (m.order().is_infinite()) return MetricOrder::infinite().to_string();
    depth = std::max(depth, m.order().depth());
  }
  return MetricOrder::finite(static_cast<std::uint32_t>(depth)).to_string();
}

struct CellKey {
  std::string algorithm;
  std::string order;
  auto operator<=>(const CellKey&) const = default;
};

}  // namespace

RoutingResult run_algorithm(const AlgorithmSpec& algorithm, const Graph& graph,
                            const TransformedGraph* transformed, const RoutingRequest& request) {
  if (algorithm.gta == 0) return run_base(algorithm.base, graph, request, nullptr);
  if (!transformed || transformed->applications() != algorithm.gta) {
    throw std::invalid_argument(algorithm.label() + " needs a graph transformed " +
                                std::to_string(algorithm.gta) + " times");
  }
  const Heuristic lifted = lift_heuristic(*transformed, base_heuristic(graph, request));
  return solve_transformed(*transformed, request, [&](const Graph& g, const RoutingRequest& r) {
    return run_base(algorithm.base, g, r, &lifted);
  });
}

Score score(const RoutingRequest& request, const RoutingResult& benchmark,
            const RoutingResult& result) {
  Score s;
  s.benchmark_solvable = benchmark.ok();
  if (!s.benchmark_solvable) return s;
  s.solved = result.ok();
  if (s.solved) {
    const double best = optimization_cost(request, benchmark);
    s.optimal = optimization_cost(request, result) <= best + 1e-9 * std::max(1.0, std::abs(best));
  }
  return s;
}

std::vector<double> measure_runtime(const std::function<void()>& fn, std::size_t warmup,
                                    std::size_t repetitions) {
  using clock = std::chrono::steady_clock;
  constexpr double kResolution =
      static_cast<double>(clock::period::num) / static_cast<double>(clock::period::den);
  for (std::size_t i = 0; i < warmup; ++i) fn();
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (std::size_t i = 0; i < repetitions; ++i) {
    const auto start = clock::now();
    fn();
    const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
    samples.push_back(std::max(elapsed, kResolution));
  }
  return samples;
}

std::vector<EcdfPoint> ecdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  std::vector<EcdfPoint> out;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    out.push_back(EcdfPoint{samples[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::vector<ExperimentTopology>& topologies) {
  ExperimentReport report;
  report.problem = config.problem;
  if (config.problem == Problem::kConstrained) {
    report.notes.push_back(
        "constraint bound drawn uniformly between the minimum and maximum constraint value over "
        "all simple paths (oracle-sized graphs); on larger graphs the maximum is " +
        std::to_string(config.bound_slack) +
        " times the constraint value of the unconstrained optimum");
  }

  std::set<std::size_t> gta_counts;
  for (const auto& a : config.algorithms) {
    if (a.gta) gta_counts.insert(a.gta);
  }

  for (const auto& topo : topologies) {
    const Graph& graph = topo.graph;
    const bool use_oracle = graph.node_count() <= config.oracle.max_nodes;
    const Benchmark bench{use_oracle ? "oracle" : "aprune", [&](const RoutingRequest& r) {
                            return use_oracle ? oracle(graph, r, config.oracle)
                                              : a_star_prune(graph, r);
                          }};
    if (graph.node_count() < 2) {
      report.skipped_topologies.push_back(topo.name + ": fewer than two nodes");
      continue;
    }

    std::map<std::size_t, TransformedGraph> transformed;
    std::map<std::size_t, std::string> transform_failure;
    for (std::size_t k : gta_counts) {
      try {
        transformed.emplace(k, gta_n(graph, k));
      } catch (const ResourceLimitExceeded& e) {
        transform_failure.emplace(k, e.what());
      }
    }

    std::map<CellKey, CellResult> cells;
    try {
      const std::vector<MetricOrder> orders =
          topo.request ? std::vector<MetricOrder>{MetricOrder::finite(0)} : config.orders;
      for (MetricOrder order : orders) {
        std::vector<RoutingRequest> requests;
        if (topo.request) {
          requests.push_back(*topo.request);
        } else {
          for (std::size_t i = 0; i < config.requests; ++i) {
            const RequestDraw d = draw_request(config.seed, topo.name, i, graph.node_count());
            const MetricOrder opt_order =
                config.problem == Problem::kShortestPath ? order : MetricOrder::finite(0);
            RoutingRequest r{d.source, d.destination,
                             MetricSet{random_metric(graph, opt_order, d.optimization_seed, "cost")}};
            if (config.problem == Problem::kConstrained) {
              const MetricSpec probe = random_metric(graph, order, d.constraint_seed, "delay");
              const auto range = constraint_range(graph, config, use_oracle, r, probe);
              if (!range) continue;
              const double bound =
                  range->first + d.bound_position * (range->second - range->first);
              r.metrics.add(probe.with_role(Role::kGlobalConstraint, bound));
            } else if (config.problem == Problem::kLocal) {
              r.metrics.add(random_metric(graph, order, d.constraint_seed, "local",
                                          Role::kLocalConstraint, config.local_threshold));
            }
            requests.push_back(std::move(r));
          }
        }
        const std::string order_name =
            topo.request ? request_order_name(topo.request->metrics) : order.to_string();

        std::vector<RoutingResult> benchmarks;
        benchmarks.reserve(requests.size());
        for (const auto& r : requests) benchmarks.push_back(bench.solve(r));

        for (const auto& algo : config.algorithms) {
          CellResult& cell = cells[CellKey{algo.label(), order_name}];
          cell.topology = topo.name;
          cell.algorithm = algo.label();
          cell.order = order_name;
          if (algo.gta) {
            if (auto it = transform_failure.find(algo.gta); it != transform_failure.end()) {
              cell.skipped = it->second;
              continue;
            }
          }
          const TransformedGraph* tg = algo.gta ? &transformed.at(algo.gta) : nullptr;
          try {
            if (config.measure && !requests.empty()) {
              for (std::size_t w = 0; w < config.warmup; ++w) {
                run_algorithm(algo, graph, tg, requests.front());
              }
            }
            for (std::size_t i = 0; i < requests.size(); ++i) {
              const RoutingResult result = run_algorithm(algo, graph, tg, requests[i]);
              const Score s = score(requests[i], benchmarks[i], result);
              ++cell.requests;
              cell.benchmark_solvable += s.benchmark_solvable;
              cell.solved += s.solved;
              cell.optimal += s.optimal;
              if (config.measure) {
                auto samples = measure_runtime([&] { run_algorithm(algo, graph, tg, requests[i]); },
                                               0, config.repetitions);
                cell.runtimes.insert(cell.runtimes.end(), samples.begin(), samples.end());
              }
            }
          } catch (const std::invalid_argument& e) {
            cell = CellResult{topo.name, algo.label(), order_name, 0, 0, 0, 0, {}, e.what()};
          }
        }
      }
    } catch (const OracleLimitExceeded& e) {
      report.skipped_topologies.push_back(topo.name + ": " + e.what());
      continue;
    }
    for (auto& [key, cell] : cells) report.cells.push_back(std::move(cell));
  }

  std::sort(report.cells.begin(), report.cells.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.topology, a.algorithm, a.order) < std::tie(b.topology, b.algorithm, b.order);
  });
  return report;
}

ImpactEntry expected_impact(Role role, MetricOrder order) {
  ImpactEntry e{role, order, "", true, true, 0};
  if (order == MetricOrder::finite(0)) return e;
  e.optimal = false;
  e.complete = role == Role::kGlobalOptimization;
  return e;
}

std::vector<ImpactEntry> impact_matrix(const ExperimentConfig& config,
                                       const std::vector<ExperimentTopology>& topologies) {
  std::vector<ExperimentTopology> small;
  for (const auto& t : topologies) {
    if (!t.request && t.graph.node_count() <= config.oracle.max_nodes) small.push_back(t);
  }
  const std::vector<MetricOrder> orders{MetricOrder::finite(0), MetricOrder::finite(1),
                                        MetricOrder::finite(2), MetricOrder::infinite()};
  const std::vector<std::tuple<Role, Problem, std::string>> rows{
      {Role::kLocalConstraint, Problem::kLocal, "dijkstra"},
      {Role::kGlobalConstraint, Problem::kConstrained, "cbf"},
      {Role::kGlobalOptimization, Problem::kShortestPath, "dijkstra"},
  };
  std::vector<ImpactEntry> out;
  for (const auto& [role, problem, algorithm] : rows) {
    ExperimentConfig c = config;
    c.problem = problem;
    c.algorithms = {AlgorithmSpec::parse(algorithm)};
    c.orders = orders;
    c.measure = false;
    const ExperimentReport r = run_experiment(c, small);
    for (MetricOrder order : orders) {
      const CellResult total = r.aggregate(algorithm, order.to_string());
      out.push_back(ImpactEntry{role, order, algorithm,
                                total.solved == total.benchmark_solvable,
                                total.optimal == total.benchmark_solvable, total.requests});
    }
  }
  return out;
}

}  // namespace mnroute

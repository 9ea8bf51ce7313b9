// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mnroute/algorithms.hpp"
#include "mnroute/experiment.hpp"
#include "mnroute/gta.hpp"
#include "mnroute/topology_io.hpp"
#include "test_support.hpp"

using namespace mnroute;

namespace {

const std::filesystem::path kData = MNROUTE_DATA_DIR;
const std::filesystem::path kOut = MNROUTE_OUTPUT_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << ")"
            << o.detail.str() << std::endl;
  if (!o.pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string route_of(const Graph& g, const RoutingResult& r) {
  return r.ok() ? r.path().to_string(g) : "infeasible";
}

void criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  const RoutingRequest r{f.source, f.destination, f.metrics};
  const TransformedGraph t = gta_n(g, 1);
  const std::vector<std::pair<std::string, RoutingResult>> runs{
      {"dijkstra", dijkstra(g, r)},
      {"astar", run_algorithm({"astar", 0}, g, nullptr, r)},
      {"ebd", edge_based_dijkstra(g, r)},
      {"aprune", a_star_prune(g, r)},
      {"astar-gta", run_algorithm({"astar", 1}, g, &t, r)},
  };
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& [name, res] : runs) {
    const bool fooled = name == "dijkstra" || name == "astar";
    const std::string want_route = fooled ? "A-C-D-F-E" : "A-B-C-E";
    const double want_cost = fooled ? 4.0 : 3.0;
    o.require(res.ok() && res.value(0) == want_cost && route_of(g, res) == want_route,
              name + " returned " + route_of(g, res));
    o.detail << " " << name << "=" << (res.ok() ? fmt(res.value(0)) : "none");
  }
  o.require(seconds < 1.0, "runtime " + fmt(seconds) + " s");
  report(1, "fig1 golden", o);
}

void criterion2() {
  Outcome o;
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  auto request = [&](double bound) {
    return RoutingRequest{f.source, f.destination,
                          MetricSet{hop_count_metric(),
                                    f.metrics.optimization().with_role(Role::kGlobalConstraint, bound)}};
  };
  const RoutingRequest tight = request(3.5);
  const RoutingRequest loose = request(4.5);
  const RoutingResult cbf_tight = cbf(g, tight);
  const RoutingResult ap_tight = a_star_prune(g, tight);
  const RoutingResult cbf_loose = cbf(g, loose);
  const RoutingResult ap_loose = a_star_prune(g, loose);
  o.require(!cbf_tight.ok(), "CBF at 3.5 returned " + route_of(g, cbf_tight));
  o.require(route_of(g, ap_tight) == "A-B-C-E", "A*Prune at 3.5 returned " + route_of(g, ap_tight));
  o.require(cbf_loose.ok() && cbf_loose.value(1) == 4.0,
            "CBF at 4.5 returned " + route_of(g, cbf_loose));
  o.require(ap_loose.ok() && ap_loose.value(1) == 3.0,
            "A*Prune at 4.5 returned " + route_of(g, ap_loose));
  o.detail << " bound 3.5: cbf=" << route_of(g, cbf_tight) << " aprune=" << route_of(g, ap_tight)
           << "; bound 4.5: cbf=" << route_of(g, cbf_loose) << " aprune=" << route_of(g, ap_loose);
  report(2, "CSP golden", o);
}

void criterion3(const std::vector<TopologyRecord>& filtered) {
  Outcome o;
  std::vector<std::pair<std::string, Graph>> graphs;
  for (const auto& r : filtered) graphs.emplace_back(r.name, r.graph);
  for (const char* name : {"fig1", "fig2"}) graphs.emplace_back(name, fixture(name).graph);

  std::size_t law_failures = 0;
  double worst_nodes = 0.0, worst_edges = 0.0;
  std::string worst_nodes_name, worst_edges_name;
  std::vector<std::string> over;
  double worst_small = 0.0;
  for (const auto& [name, g] : graphs) {
    std::size_t expected_edges = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      expected_edges += g.in_degree(g.source(EdgeId{e})) + 1;
    }
    const TransformedGraph once = gta_once(g);
    const TransformedGraph sunk = add_sinks(once);
    const bool law = once.graph().node_count() == g.node_count() + g.edge_count() &&
                     once.graph().edge_count() == expected_edges &&
                     sunk.graph().node_count() == once.graph().node_count() + g.node_count() &&
                     sunk.graph().edge_count() ==
                         once.graph().edge_count() + g.node_count() + g.edge_count();
    if (!law) {
      ++law_failures;
      o.require(false, "size law on " + name);
    }
    const double node_growth =
        static_cast<double>(once.graph().node_count()) / static_cast<double>(g.node_count());
    const double edge_growth =
        static_cast<double>(once.graph().edge_count()) / static_cast<double>(g.edge_count());
    if (node_growth > worst_nodes) worst_nodes = node_growth, worst_nodes_name = name;
    if (edge_growth > worst_edges) worst_edges = edge_growth, worst_edges_name = name;
    if (node_growth > 10.0 || edge_growth > 10.0) over.push_back(name + "=" + fmt(edge_growth) + "x");
    if (g.node_count() <= 15) worst_small = std::max({worst_small, node_growth, edge_growth});
  }
  o.detail << " size law holds on " << graphs.size() - law_failures << "/" << graphs.size()
           << " graphs; max node growth " << fmt(worst_nodes) << "x (" << worst_nodes_name
           << "), max edge growth " << fmt(worst_edges) << "x (" << worst_edges_name
           << "); max growth on graphs with at most 15 nodes " << fmt(worst_small) << "x";
  if (!over.empty()) {
    std::string list;
    for (const auto& s : over) list += (list.empty() ? "" : ", ") + s;
    o.require(false, "growth above one order of magnitude on " + std::to_string(over.size()) +
                         " graphs: " + list);
  }
  report(3, "GTA size law", o);
}

std::vector<std::string> topology_names(const ExperimentReport& r) {
  std::set<std::string> names;
  for (const auto& c : r.cells) names.insert(c.topology);
  return {names.begin(), names.end()};
}

void criterion4(const ExperimentReport& sp) {
  Outcome o;
  const auto names = topology_names(sp);
  const CellResult aprune = sp.aggregate("aprune", "1");
  o.require(names.size() >= 10, std::to_string(names.size()) + " topologies");
  o.require(aprune.benchmark_solvable >= 500, std::to_string(aprune.benchmark_solvable) + " requests");
  for (const char* a : {"ebd", "aprune", "astar-gta"}) {
    const CellResult total = sp.aggregate(a, "1");
    o.detail << " " << a << "=" << fmt(total.optimality_ratio());
    for (const auto& n : names) {
      const CellResult* c = sp.find(n, a, "1");
      o.require(c && c->skipped.empty() && c->optimality_ratio() == 1.0,
                std::string(a) + " below 1 on " + n);
    }
  }
  std::size_t suboptimal = 0;
  for (const auto& n : names) suboptimal += sp.find(n, "astar", "1")->optimality_ratio() < 1.0;
  o.detail << " astar=" << fmt(sp.aggregate("astar", "1").optimality_ratio()) << " (below 1 on "
           << suboptimal << " topologies) over " << aprune.benchmark_solvable << " requests on "
           << names.size() << " topologies";
  o.require(suboptimal >= 1, "plain A* optimal everywhere");
  report(4, "M1 optimality suite", o);
}

void criterion5(const ExperimentReport& csp) {
  Outcome o;
  const auto names = topology_names(csp);
  const CellResult gta = csp.aggregate("larac-gta", "1");
  o.require(names.size() >= 10, std::to_string(names.size()) + " topologies");
  o.require(gta.benchmark_solvable >= 500, std::to_string(gta.benchmark_solvable) + " requests");
  o.require(gta.completeness_ratio() == 1.0, "LARAC-GTA completeness " + fmt(gta.completeness_ratio()));
  std::size_t incomplete = 0, m0_mismatch = 0;
  for (const auto& n : names) {
    incomplete += csp.find(n, "larac", "1")->completeness_ratio() < 1.0;
    const CellResult* a = csp.find(n, "larac", "0");
    const CellResult* b = csp.find(n, "larac-gta", "0");
    if (a->solved != b->solved || a->optimal != b->optimal) {
      ++m0_mismatch;
      o.require(false, "order-0 LARAC and LARAC-GTA differ on " + n);
    }
  }
  o.require(incomplete >= 1, "plain LARAC complete everywhere");
  o.detail << " larac-gta completeness=" << fmt(gta.completeness_ratio())
           << " larac completeness=" << fmt(csp.aggregate("larac", "1").completeness_ratio())
           << " (below 1 on " << incomplete << " topologies); order 0: larac optimality="
           << fmt(csp.aggregate("larac", "0").optimality_ratio())
           << " larac-gta optimality=" << fmt(csp.aggregate("larac-gta", "0").optimality_ratio())
           << ", " << names.size() - m0_mismatch << "/" << names.size() << " topologies identical";
  report(5, "M1 completeness suite", o);
}

void criterion6(const ExperimentReport& sp, const ExperimentReport& csp) {
  Outcome o;
  const double astar = sp.aggregate("astar", "inf").optimality_ratio();
  const double astar_gta = sp.aggregate("astar-gta", "inf").optimality_ratio();
  const double larac = csp.aggregate("larac", "inf").completeness_ratio();
  const double larac_gta = csp.aggregate("larac-gta", "inf").completeness_ratio();
  o.require(astar_gta >= astar, "A*-GTA optimality below A*");
  o.require(larac_gta >= larac, "LARAC-GTA completeness below LARAC");
  for (const char* order : {"0", "1", "inf"}) {
    const CellResult a = sp.aggregate("aprune", order);
    const CellResult b = csp.aggregate("aprune", order);
    o.require(a.optimality_ratio() == 1.0 && a.completeness_ratio() == 1.0,
              std::string("A*Prune SP order ") + order);
    o.require(b.optimality_ratio() == 1.0 && b.completeness_ratio() == 1.0,
              std::string("A*Prune CSP order ") + order);
  }
  o.detail << " optimality astar=" << fmt(astar) << " astar-gta=" << fmt(astar_gta)
           << "; completeness larac=" << fmt(larac) << " larac-gta=" << fmt(larac_gta)
           << "; aprune 1.0 on both problems";
  report(6, "M-infinity improvement", o);
}

void criterion7(const std::vector<ImpactEntry>& impact) {
  Outcome o;
  for (const auto& e : impact) {
    const ImpactEntry want = expected_impact(e.role, e.order);
    const bool match = want.complete == e.complete && want.optimal == e.optimal;
    o.detail << " " << to_string(e.role) << "/M" << e.order.to_string() << "="
             << (e.complete ? "C" : "c") << (e.optimal ? "O" : "o");
    o.require(match, to_string(e.role) + " order " + e.order.to_string());
  }
  o.detail << " (upper case holds, lower case lost)";
  report(7, "impact matrix", o);
}

void criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::size_t graphs = 0, trails_total = 0, simple_total = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + rng() % 6;
    const Graph g = mnroute::testing::random_graph(rng(), n, 0.25);
    const NodeId s{rng() % n};
    const NodeId d{(s.index() + 1 + rng() % (n - 1)) % n};
    const MetricSpec m = random_metric(g, MetricOrder::finite(1), rng());
    const TransformedGraph t = gta_n(g, 1);
    const MetricSpec lifted = lift_metric(t, m);
    const OracleLimits limits{5'000'000, 1'000};

    std::map<std::vector<EdgeId>, double> trails;
    enumerate_walks(g, s, d, limits, WalkKind::kTrails, [&](std::span<const EdgeId> w) {
      trails.emplace(std::vector<EdgeId>(w.begin(), w.end()),
                     combine(g, m, Path(g, s, {w.begin(), w.end()}, Path::Revisits::kAllow)));
    });
    std::size_t simple = 0;
    enumerate_walks(g, s, d, limits, WalkKind::kSimplePaths, [&](std::span<const EdgeId>) { ++simple; });

    std::set<std::vector<EdgeId>> images;
    std::size_t transformed = 0;
    bool ok = true;
    enumerate_walks(t.graph(), t.source_copy(s), t.sink(d), limits, WalkKind::kSimplePaths,
                    [&](std::span<const EdgeId> w) {
                      ++transformed;
                      std::vector<EdgeId> image;
                      for (EdgeId e : w) {
                        if (auto orig = t.edge(e).original) image.push_back(*orig);
                      }
                      auto it = trails.find(image);
                      const Path tp(t.graph(), t.source_copy(s), {w.begin(), w.end()});
                      if (it == trails.end() || !images.insert(image).second ||
                          combine(t.graph(), lifted, tp) != it->second) {
                        ok = false;
                      }
                    });
    ok = ok && transformed == trails.size();
    if (!ok) o.require(false, "graph " + std::to_string(i));
    ++graphs;
    trails_total += trails.size();
    simple_total += simple;
  }
  o.detail << " " << graphs << " graphs: " << trails_total
           << " original trails (of which " << simple_total
           << " simple paths) matched one-to-one with transformed source-to-sink paths, costs equal";
  report(8, "transformation equivalence", o);
}

void criterion9() {
  Outcome o;
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  const TransformedGraph plain = gta_n(g, 1);
  const TransformedGraph t = add_sink_edges(plain);
  const EdgeId ce = g.edge("C", "E");
  const EdgeId shared = *t.gadget_edge(ce);
  std::size_t copies = 0;
  for (std::size_t e = 0; e < t.graph().edge_count(); ++e) {
    if (t.edge(EdgeId{e}).original == ce) {
      ++copies;
      o.require(t.graph().target(EdgeId{e}) == t.graph().source(shared), "copy bypasses gadget");
    }
  }
  const Path x = lift_path(t, path_from_labels(g, {"A", "B", "C", "E"}));
  const Path y = lift_path(t, path_from_labels(g, {"A", "C", "E"}));
  auto uses = [&](const Path& p) {
    return std::find(p.edges().begin(), p.edges().end(), shared) != p.edges().end();
  };
  const bool disjoint = transformed_edge_disjoint(t, x, y);
  const bool plain_disjoint =
      transformed_edge_disjoint(plain, lift_path(plain, path_from_labels(g, {"A", "B", "C", "E"})),
                                lift_path(plain, path_from_labels(g, {"A", "C", "E"})));
  o.require(uses(x) && uses(y), "paths do not share the gadget edge");
  o.require(!disjoint, "disjointness check reported disjoint");
  o.detail << " " << copies << " context copies of C-E share gadget edge "
           << t.graph().edge_name(shared) << "; disjoint=" << (disjoint ? "yes" : "no")
           << " (without the gadget: " << (plain_disjoint ? "yes" : "no") << ")";
  report(9, "multipath gadget witness", o);
}

}  // namespace

int main() {
  const auto zoo = load_topology_dir(kData / "topology-zoo");
  const auto filtered = apply_filter(zoo, TopologyFilter::shortest_path());
  TopologyFilter small_filter = TopologyFilter::shortest_path();
  small_filter.max_nodes = 15;
  const auto suite = zoo_topologies(apply_filter(zoo, small_filter));
  std::cout << "Topology Zoo: " << zoo.size() << " files, " << filtered.size()
            << " pass the shortest-path filter, " << suite.size()
            << " have at most 15 nodes (property suite)" << std::endl;

  criterion1();
  criterion2();
  criterion3(filtered);

  ExperimentConfig sp_config;
  sp_config.problem = Problem::kShortestPath;
  for (const char* a : {"astar", "ebd", "astar-gta", "aprune"}) {
    sp_config.algorithms.push_back(AlgorithmSpec::parse(a));
  }
  sp_config.requests = 30;
  sp_config.warmup = 5;
  sp_config.seed = 20240501;
  const ExperimentReport sp = run_experiment(sp_config, suite);

  ExperimentConfig csp_config = sp_config;
  csp_config.problem = Problem::kConstrained;
  csp_config.algorithms.clear();
  for (const char* a : {"larac", "larac-gta", "cbf", "aprune"}) {
    csp_config.algorithms.push_back(AlgorithmSpec::parse(a));
  }
  csp_config.measure = false;
  const ExperimentReport csp = run_experiment(csp_config, suite);

  const auto impact = impact_matrix(sp_config, suite);
  std::filesystem::create_directories(kOut);
  emit_report(sp, impact, kOut / "sp");
  emit_report(csp, {}, kOut / "csp");

  criterion4(sp);
  criterion5(csp);
  criterion6(sp, csp);
  criterion7(impact);
  criterion8();
  criterion9();
  std::cout << "EXCLUDED criterion 10 (absolute runtimes and A*Prune crossover percentages are "
               "not gated; runtime ECDF data written to "
            << (kOut / "sp" / "ecdf").string() << ")" << std::endl;

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criterion(s) failed"
                         : std::string("acceptance: all gated criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}

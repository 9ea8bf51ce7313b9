#pragma once

#include <random>
#include <string>

#include "mnroute/algorithms.hpp"
#include "mnroute/graph.hpp"
#include "mnroute/metrics.hpp"

namespace mnroute::testing {

/// Directed graph with `nodes` labelled nodes and each ordered pair joined
/// with probability `density`, plus a ring so it is strongly connected.
inline Graph random_graph(std::uint64_t seed, std::size_t nodes, double density) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Graph g;
  for (std::size_t v = 0; v < nodes; ++v) g.add_node("n" + std::to_string(v));
  for (std::size_t v = 0; v < nodes; ++v) g.add_edge(NodeId{v}, NodeId{(v + 1) % nodes});
  for (std::size_t u = 0; u < nodes; ++u) {
    for (std::size_t v = 0; v < nodes; ++v) {
      if (u != v && (v != (u + 1) % nodes) && coin(rng)) g.add_edge(NodeId{u}, NodeId{v});
    }
  }
  return g;
}

inline RoutingRequest request(NodeId s, NodeId d, std::initializer_list<MetricSpec> metrics) {
  return RoutingRequest{s, d, MetricSet(metrics)};
}

/// Exhaustive optimum value (or nullopt), computed independently of the
/// library's oracle by plain recursion over simple paths.
inline std::optional<double> brute_force(const Graph& g, const RoutingRequest& r) {
  std::optional<double> best;
  std::vector<EdgeId> path;
  std::vector<bool> used(g.node_count());
  std::function<void(NodeId)> walk = [&](NodeId v) {
    if (v == r.destination) {
      const Verdict verdict = feasible(g, r.metrics, Path::from_edges(g, path));
      if (verdict.feasible) {
        const double c = verdict.combined[*r.metrics.optimization_index()];
        if (!best || c < *best) best = c;
      }
      return;
    }
    for (EdgeId e : g.out_edges(v)) {
      const NodeId w = g.target(e);
      if (used[w.index()]) continue;
      used[w.index()] = true;
      path.push_back(e);
      walk(w);
      path.pop_back();
      used[w.index()] = false;
    }
  };
  used[r.source.index()] = true;
  if (r.source == r.destination) return 0.0;
  walk(r.source);
  return best;
}

}  // namespace mnroute::testing

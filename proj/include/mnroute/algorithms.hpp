#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mnroute/graph.hpp"
#include "mnroute/metrics.hpp"

namespace mnroute {

struct RoutingRequest {
  NodeId source;
  NodeId destination;
  MetricSet metrics;
};

struct SearchStats {
  std::size_t settled_labels = 0;
  std::size_t queue_pushes = 0;
  double wall_seconds = 0.0;
};

struct FoundPath {
  Path path;
  /// Combined value per request metric, aligned with MetricSet::all().
  std::vector<double> combined;
};

/// Outcome of one search. A found path always passes metrics::feasible and
/// its combined values are recomputed from the metric definitions.
struct RoutingResult {
  std::optional<FoundPath> found;
  SearchStats stats;

  bool ok() const { return found.has_value(); }
  const Path& path() const { return found.value().path; }
  /// Combined value of metric `i`.
  double value(std::size_t i) const { return found.value().combined.at(i); }
};

/// Re-checks `path` against the request and packages it: infeasible paths
/// become an Infeasible result.
RoutingResult make_result(const Graph& graph, const RoutingRequest& request,
                          std::optional<Path> path, SearchStats stats);

/// Combined optimization value of a found result.
double optimization_value(const RoutingRequest& request, const RoutingResult& result);

/// Admissible estimate of the remaining optimization cost from a node.
using Heuristic = std::function<double(NodeId)>;

Heuristic zero_heuristic();
/// Hop distance to `destination` (reverse BFS) times `min_edge_value`;
/// unreachable nodes get +inf.
Heuristic hop_count_heuristic(const Graph& graph, NodeId destination, double min_edge_value);

/// Node-label Dijkstra. Each relaxed edge is evaluated with the context of
/// the tail node's current best path, which is exact for order-0 metrics and
/// deliberately blind to alternative prefixes otherwise. Local constraints
/// prune edges under the same context; global constraints are only checked
/// on the returned path.
RoutingResult dijkstra(const Graph& graph, const RoutingRequest& request);

/// Dijkstra ordered by cost + heuristic, same context semantics.
RoutingResult a_star(const Graph& graph, const RoutingRequest& request,
                     const Heuristic& heuristic);

/// Dijkstra over edge labels: the best path towards each edge is kept, so an
/// order-1 optimization metric is handled exactly. Throws
/// std::invalid_argument for metrics of order above one.
RoutingResult edge_based_dijkstra(const Graph& graph, const RoutingRequest& request);

/// Constrained Bellman-Ford for one global constraint: labels are settled in
/// order of the constraint metric, each node keeps only labels that improve
/// its best optimization value, and labels beyond the bound are dropped.
RoutingResult cbf(const Graph& graph, const RoutingRequest& request);

struct LaracOptions {
  std::size_t max_iterations = 64;
};

/// Lagrangian relaxation of the constrained shortest path over the
/// aggregated cost c + lambda * d, with Dijkstra as the inner solver.
RoutingResult larac(const Graph& graph, const RoutingRequest& request,
                    const LaracOptions& options = {});

/// Best-first search over whole simple paths with constraint projections.
/// Every queue entry carries its own prefix, so any metric order is exact.
RoutingResult a_star_prune(const Graph& graph, const RoutingRequest& request);

struct OracleLimits {
  std::size_t max_paths = 1'000'000;
  std::size_t max_nodes = 15;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which walks an enumeration visits.
enum class WalkKind {
  kSimplePaths,  ///< no repeated node; stops at the destination
  kTrails,       ///< no repeated edge; may pass through the destination
};

/// Calls `visit` with the edge list of every walk of the given kind from
/// `source` to `destination`, in depth-first insertion order. Throws
/// OracleLimitExceeded when more than `limits.max_paths` walks are visited or
/// the graph has more than `limits.max_nodes` nodes.
void enumerate_walks(const Graph& graph, NodeId source, NodeId destination,
                     const OracleLimits& limits, WalkKind kind,
                     const std::function<void(std::span<const EdgeId>)>& visit);

/// Exhaustive constrained optimum over all simple paths. Ties are broken by
/// hop count, then by the edge id sequence.
RoutingResult oracle(const Graph& graph, const RoutingRequest& request,
                     const OracleLimits& limits = {});

}  // namespace mnroute

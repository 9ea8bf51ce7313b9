#include <algorithm>
#include <limits>
#include <string>

#include "search_support.hpp"

namespace mnroute {

void enumerate_walks(const Graph& graph, NodeId source, NodeId destination,
                     const OracleLimits& limits, WalkKind kind,
                     const std::function<void(std::span<const EdgeId>)>& visit) {
  if (graph.node_count() > limits.max_nodes) {
    throw OracleLimitExceeded("graph too large for oracle: " +
                              std::to_string(graph.node_count()) + " nodes > " +
                              std::to_string(limits.max_nodes));
  }
  std::size_t visited = 0;
  auto emit = [&](std::span<const EdgeId> walk) {
    if (++visited > limits.max_paths) {
      throw OracleLimitExceeded("graph too large for oracle: more than " +
                                std::to_string(limits.max_paths) + " paths");
    }
    visit(walk);
  };
  if (source == destination) {
    emit({});
    if (kind == WalkKind::kSimplePaths) return;
  }

  std::vector<bool> node_used(graph.node_count(), false);
  std::vector<bool> edge_used(graph.edge_count(), false);
  std::vector<EdgeId> walk;
  // Per depth: the node being expanded and the next out-edge position.
  std::vector<std::pair<NodeId, std::size_t>> frames{{source, 0}};
  node_used[source.index()] = true;

  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    const auto out = graph.out_edges(v);
    if (next == out.size()) {
      frames.pop_back();
      if (!walk.empty()) {
        const EdgeId last = walk.back();
        walk.pop_back();
        edge_used[last.index()] = false;
        // A node may sit on the walk several times as a trail; it stays
        // marked while any visit remains.
        node_used[graph.target(last).index()] =
            std::any_of(walk.begin(), walk.end(),
                        [&](EdgeId e) { return graph.target(e) == graph.target(last); }) ||
            graph.target(last) == source;
      }
      continue;
    }
    const EdgeId e = out[next++];
    const NodeId w = graph.target(e);
    if (kind == WalkKind::kSimplePaths ? node_used[w.index()] : edge_used[e.index()]) continue;
    walk.push_back(e);
    edge_used[e.index()] = true;
    node_used[w.index()] = true;
    if (w == destination) emit(walk);
    if (w == destination && kind == WalkKind::kSimplePaths) {
      walk.pop_back();
      edge_used[e.index()] = false;
      node_used[w.index()] = false;
      continue;
    }
    frames.emplace_back(w, 0);
  }
}

RoutingResult oracle(const Graph& graph, const RoutingRequest& request,
                     const OracleLimits& limits) {
  detail::require_endpoints(graph, request);
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSet& metrics = request.metrics;
  const std::size_t objective = *metrics.optimization_index();

  std::optional<std::vector<EdgeId>> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> totals(metrics.size());

  enumerate_walks(graph, request.source, request.destination, limits, WalkKind::kSimplePaths,
                  [&](std::span<const EdgeId> walk) {
    ++stats.settled_labels;
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      const MetricSpec& metric = metrics[m];
      double acc = *identity_element(metric.combiner());
      for (std::size_t i = 0; i < walk.size(); ++i) {
        const double v = metric.evaluate_unchecked(walk[i], walk.first(i));
        if (metric.role() == Role::kLocalConstraint && !metric.admits(v)) return;
        acc = combine_values(metric.combiner(), acc, v);
      }
      if (metric.role() == Role::kGlobalConstraint && !(acc <= metric.limit())) return;
      totals[m] = acc;
    }
    const double cost = totals[objective];
    const bool better =
        !best || cost < best_cost ||
        (cost == best_cost &&
         (walk.size() < best->size() ||
          (walk.size() == best->size() &&
           std::lexicographical_compare(walk.begin(), walk.end(), best->begin(), best->end()))));
    if (better) {
      best.emplace(walk.begin(), walk.end());
      best_cost = cost;
    }
  });

  std::optional<Path> path;
  if (best) path = Path(graph, request.source, *best);
  stats.wall_seconds = watch.seconds();
  return make_result(graph, request, std::move(path), stats);
}

}  // namespace mnroute

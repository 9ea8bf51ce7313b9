#include <cmath>
#include <deque>
#include <limits>

#include "search_support.hpp"

namespace mnroute {
namespace detail {

NodeSearchOutcome node_search(const Graph& graph, NodeId source, NodeId destination,
                              const MetricSet& metrics, const EdgeWeight& weight,
                              const Heuristic* heuristic, SearchStats& stats) {
  const auto locals = metrics.indices(Role::kLocalConstraint);
  const std::size_t depth = metrics.context_depth();
  auto h = [&](NodeId v) { return heuristic ? (*heuristic)(v) : 0.0; };

  LabelArena arena;
  auto queue = make_queue(arena);
  std::vector<std::int64_t> best(graph.node_count(), -1);
  std::vector<bool> closed(graph.node_count(), false);

  best[source.index()] = static_cast<std::int64_t>(
      arena.add(Label{source, EdgeId{}, -1, 0, 0.0, h(source), 0.0}));
  queue.push(best[source.index()]);
  ++stats.queue_pushes;

  std::vector<EdgeId> ctx;
  while (!queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    const Label label = arena[i];
    const NodeId v = label.node;
    if (closed[v.index()] || best[v.index()] != static_cast<std::int64_t>(i)) continue;
    closed[v.index()] = true;
    ++stats.settled_labels;
    if (v == destination) {
      return {Path(graph, source, arena.edges(i)), label.cost};
    }
    arena.context(i, depth, ctx);
    for (EdgeId e : graph.out_edges(v)) {
      const NodeId w = graph.target(e);
      if (closed[w.index()]) continue;
      const double hw = h(w);
      if (std::isinf(hw)) continue;
      if (!locals_admit(metrics, locals, e, ctx)) continue;
      const double cost = label.cost + weight(e, ctx);
      const std::size_t cand = arena.add(Label{w, e, static_cast<std::int64_t>(i),
                                               label.hops + 1, cost, cost + hw, 0.0});
      const std::int64_t incumbent = best[w.index()];
      if (incumbent < 0 || arena.before(cand, static_cast<std::size_t>(incumbent))) {
        best[w.index()] = static_cast<std::int64_t>(cand);
        queue.push(cand);
        ++stats.queue_pushes;
      } else {
        arena.pop_back();
      }
    }
  }
  return {};
}

}  // namespace detail

Heuristic zero_heuristic() {
  return [](NodeId) { return 0.0; };
}

Heuristic hop_count_heuristic(const Graph& graph, NodeId destination, double min_edge_value) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(graph.node_count(), kUnreached);
  std::deque<NodeId> frontier{destination};
  hops[destination.index()] = 0;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop_front();
    for (EdgeId e : graph.in_edges(v)) {
      const NodeId u = graph.source(e);
      if (hops[u.index()] == kUnreached) {
        hops[u.index()] = hops[v.index()] + 1;
        frontier.push_back(u);
      }
    }
  }
  return [hops = std::move(hops), min_edge_value](NodeId v) {
    const std::size_t n = hops.at(v.index());
    if (n == kUnreached) return std::numeric_limits<double>::infinity();
    return static_cast<double>(n) * min_edge_value;
  };
}

namespace {

RoutingResult run_node_search(const Graph& graph, const RoutingRequest& request,
                              const Heuristic* heuristic) {
  detail::require_endpoints(graph, request);
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSpec& objective = request.metrics.optimization();
  auto outcome = detail::node_search(
      graph, request.source, request.destination, request.metrics,
      [&](EdgeId e, Context ctx) { return objective.evaluate_unchecked(e, ctx); }, heuristic,
      stats);
  stats.wall_seconds = watch.seconds();
  return make_result(graph, request, std::move(outcome.path), stats);
}

}  // namespace

RoutingResult dijkstra(const Graph& graph, const RoutingRequest& request) {
  return run_node_search(graph, request, nullptr);
}

RoutingResult a_star(const Graph& graph, const RoutingRequest& request,
                     const Heuristic& heuristic) {
  return run_node_search(graph, request, &heuristic);
}

}  // namespace mnroute

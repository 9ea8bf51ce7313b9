#include <limits>
#include <stdexcept>

#include "search_support.hpp"

namespace mnroute {

RoutingResult cbf(const Graph& graph, const RoutingRequest& request) {
  detail::require_endpoints(graph, request);
  const MetricSet& metrics = request.metrics;
  const auto constraints = metrics.indices(Role::kGlobalConstraint);
  if (constraints.size() != 1) {
    throw std::invalid_argument("CBF needs exactly one global constraint");
  }
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSpec& objective = metrics.optimization();
  const MetricSpec& constraint = metrics[constraints.front()];
  const double bound = constraint.limit();
  const auto locals = metrics.indices(Role::kLocalConstraint);
  const std::size_t depth = metrics.context_depth();

  using detail::Label;
  detail::LabelArena arena;
  auto queue = detail::make_queue(arena);
  // Best optimization value among the labels settled at each node so far.
  std::vector<double> best_cost(graph.node_count(), std::numeric_limits<double>::infinity());

  // key = constraint value, key2 = optimization value.
  queue.push(arena.add(Label{request.source, EdgeId{}, -1, 0, 0.0, 0.0, 0.0}));
  ++stats.queue_pushes;

  std::optional<std::size_t> answer;
  std::vector<EdgeId> ctx;
  while (!queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    const Label label = arena[i];
    const NodeId v = label.node;
    if (label.key2 >= best_cost[v.index()]) continue;
    best_cost[v.index()] = label.key2;
    ++stats.settled_labels;
    if (v == request.destination) {
      answer = i;
      continue;
    }
    arena.context(i, depth, ctx);
    for (EdgeId e : graph.out_edges(v)) {
      const NodeId w = graph.target(e);
      if (!detail::locals_admit(metrics, locals, e, ctx)) continue;
      const double d = label.key + constraint.evaluate_unchecked(e, ctx);
      if (!(d <= bound)) continue;
      const double c = label.key2 + objective.evaluate_unchecked(e, ctx);
      if (c >= best_cost[w.index()]) continue;
      queue.push(arena.add(Label{w, e, static_cast<std::int64_t>(i), label.hops + 1, c, d, c}));
      ++stats.queue_pushes;
    }
  }

  std::optional<Path> path;
  if (answer) path = Path(graph, request.source, arena.edges(*answer));
  stats.wall_seconds = watch.seconds();
  return make_result(graph, request, std::move(path), stats);
}

}  // namespace mnroute

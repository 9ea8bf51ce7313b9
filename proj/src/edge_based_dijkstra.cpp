#include <stdexcept>

#include "search_support.hpp"

namespace mnroute {

RoutingResult edge_based_dijkstra(const Graph& graph, const RoutingRequest& request) {
  detail::require_endpoints(graph, request);
  for (const auto& m : request.metrics.all()) {
    if (m.order().depth() > 1) {
      throw std::invalid_argument("edge-based Dijkstra needs metrics of order <= 1, got '" +
                                  m.name() + "' of order " + m.order().to_string());
    }
  }
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSet& metrics = request.metrics;
  const MetricSpec& objective = metrics.optimization();
  const auto locals = metrics.indices(Role::kLocalConstraint);

  using detail::Label;
  detail::LabelArena arena;
  auto queue = detail::make_queue(arena);
  std::vector<std::int64_t> best(graph.edge_count(), -1);
  std::vector<bool> closed(graph.edge_count(), false);

  // Relaxes `e` from label `from` whose last edge (if any) is the context.
  auto relax = [&](std::size_t from, EdgeId e, Context ctx) {
    if (closed[e.index()] || !detail::locals_admit(metrics, locals, e, ctx)) return;
    const Label& parent = arena[from];
    const double cost = parent.cost + objective.evaluate_unchecked(e, ctx);
    const std::size_t cand = arena.add(Label{graph.target(e), e, static_cast<std::int64_t>(from),
                                             parent.hops + 1, cost, cost, 0.0});
    const std::int64_t incumbent = best[e.index()];
    if (incumbent < 0 || arena.before(cand, static_cast<std::size_t>(incumbent))) {
      best[e.index()] = static_cast<std::int64_t>(cand);
      queue.push(cand);
      ++stats.queue_pushes;
    } else {
      arena.pop_back();
    }
  };

  // Virtual root label standing for the null ingress at the source.
  const std::size_t root = arena.add(Label{request.source, EdgeId{}, -1, 0, 0.0, 0.0, 0.0});
  ++stats.settled_labels;
  if (request.source == request.destination) {
    stats.wall_seconds = watch.seconds();
    return make_result(graph, request, Path::trivial(graph, request.source), stats);
  }
  for (EdgeId e : graph.out_edges(request.source)) relax(root, e, {});

  while (!queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    const EdgeId e = arena[i].via;
    if (closed[e.index()] || best[e.index()] != static_cast<std::int64_t>(i)) continue;
    closed[e.index()] = true;
    ++stats.settled_labels;
    for (EdgeId next : graph.out_edges(arena[i].node)) relax(i, next, std::span(&e, 1));
  }

  // Best label among the ingress edges of the destination.
  std::optional<std::size_t> answer;
  for (EdgeId e : graph.in_edges(request.destination)) {
    const std::int64_t idx = best[e.index()];
    if (idx < 0) continue;
    if (!answer || arena.before(static_cast<std::size_t>(idx), *answer)) {
      answer = static_cast<std::size_t>(idx);
    }
  }
  std::optional<Path> path;
  if (answer) path = Path(graph, request.source, arena.edges(*answer), Path::Revisits::kAllow);
  stats.wall_seconds = watch.seconds();
  return make_result(graph, request, std::move(path), stats);
}

}  // namespace mnroute

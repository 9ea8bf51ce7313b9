#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "search_support.hpp"

namespace mnroute {

namespace {

/// Admissible remaining-value bound per node: reverse Dijkstra over the
/// per-edge lower bounds of `metric`.
std::vector<double> reverse_lower_bounds(const Graph& graph, NodeId destination,
                                         const MetricSpec& metric) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(graph.node_count(), kInf);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[destination.index()] = 0.0;
  queue.emplace(0.0, destination);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v.index()]) continue;
    for (EdgeId e : graph.in_edges(v)) {
      const NodeId u = graph.source(e);
      const double nd = d + std::max(0.0, metric.source()->lower_bound(e));
      if (nd < dist[u.index()]) {
        dist[u.index()] = nd;
        queue.emplace(nd, u);
      }
    }
  }
  return dist;
}

}  // namespace

RoutingResult a_star_prune(const Graph& graph, const RoutingRequest& request) {
  detail::require_endpoints(graph, request);
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSet& metrics = request.metrics;
  const MetricSpec& objective = metrics.optimization();
  const auto constraints = metrics.indices(Role::kGlobalConstraint);
  const auto locals = metrics.indices(Role::kLocalConstraint);
  const std::size_t depth = metrics.context_depth();
  const NodeId target = request.destination;

  const Heuristic guess =
      hop_count_heuristic(graph, target, global_min_edge_value(graph, objective));
  std::vector<std::vector<double>> projections;
  for (std::size_t k : constraints) {
    projections.push_back(reverse_lower_bounds(graph, target, metrics[k]));
  }
  auto slack = [](double bound) { return 1e-9 * std::max(1.0, std::abs(bound)); };

  using detail::Label;
  detail::LabelArena arena;
  auto queue = detail::make_queue(arena);
  // Accumulated constraint values, constraints.size() entries per label.
  std::vector<double> accumulated;

  auto push = [&](const Label& label, std::span<const double> values) {
    queue.push(arena.add(label));
    accumulated.insert(accumulated.end(), values.begin(), values.end());
    ++stats.queue_pushes;
  };
  std::vector<double> zero(constraints.size(), 0.0);
  push(Label{request.source, EdgeId{}, -1, 0, 0.0, guess(request.source), 0.0}, zero);

  std::optional<Path> answer;
  std::vector<EdgeId> prefix;
  std::vector<bool> on_path(graph.node_count(), false);
  std::vector<double> values(constraints.size());
  while (!queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    ++stats.settled_labels;
    const Label label = arena[i];
    const auto first = accumulated.begin() + static_cast<std::ptrdiff_t>(i * constraints.size());
    const std::vector<double> acc(first, first + static_cast<std::ptrdiff_t>(constraints.size()));
    if (label.node == target) {
      bool within = true;
      for (std::size_t k = 0; k < constraints.size(); ++k) {
        within = within && acc[k] <= metrics[constraints[k]].limit();
      }
      if (!within) continue;
      answer = Path(graph, request.source, arena.edges(i));
      break;
    }
    prefix = arena.edges(i);
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[request.source.index()] = true;
    for (EdgeId e : prefix) on_path[graph.target(e).index()] = true;
    const Context ctx = depth < prefix.size() ? Context(prefix).last(depth) : Context(prefix);

    for (EdgeId e : graph.out_edges(label.node)) {
      const NodeId w = graph.target(e);
      if (on_path[w.index()]) continue;
      const double hw = guess(w);
      if (std::isinf(hw)) continue;
      if (!detail::locals_admit(metrics, locals, e, ctx)) continue;
      bool pruned = false;
      for (std::size_t k = 0; k < constraints.size() && !pruned; ++k) {
        const MetricSpec& m = metrics[constraints[k]];
        values[k] = acc[k] + m.evaluate_unchecked(e, ctx);
        pruned = values[k] + projections[k][w.index()] > m.limit() + slack(m.limit());
      }
      if (pruned) continue;
      const double cost = label.cost + objective.evaluate_unchecked(e, ctx);
      push(Label{w, e, static_cast<std::int64_t>(i), label.hops + 1, cost, cost + hw, 0.0},
           values);
    }
  }
  stats.wall_seconds = watch.seconds();
  return make_result(graph, request, std::move(answer), stats);
}

}  // namespace mnroute

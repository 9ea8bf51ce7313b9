#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "search_support.hpp"

namespace mnroute {

namespace {

struct Candidate {
  Path path;
  double cost;   // optimization value
  double delay;  // constraint value
};

}  // namespace

RoutingResult larac(const Graph& graph, const RoutingRequest& request,
                    const LaracOptions& options) {
  detail::require_endpoints(graph, request);
  const MetricSet& metrics = request.metrics;
  const auto constraints = metrics.indices(Role::kGlobalConstraint);
  if (constraints.size() != 1) {
    throw std::invalid_argument("LARAC needs exactly one global constraint");
  }
  detail::Stopwatch watch;
  SearchStats stats;
  const MetricSpec& objective = metrics.optimization();
  const MetricSpec& constraint = metrics[constraints.front()];
  const double bound = constraint.limit();

  auto finish = [&](std::optional<Path> path) {
    stats.wall_seconds = watch.seconds();
    return make_result(graph, request, std::move(path), stats);
  };

  auto solve = [&](const detail::EdgeWeight& weight) -> std::optional<Candidate> {
    auto outcome = detail::node_search(graph, request.source, request.destination, metrics,
                                       weight, nullptr, stats);
    if (!outcome.path) return std::nullopt;
    const auto edges = outcome.path->edges();
    return Candidate{*outcome.path, detail::path_value(objective, edges),
                     detail::path_value(constraint, edges)};
  };
  auto aggregated_weight = [&](double lambda) -> detail::EdgeWeight {
    return [&objective, &constraint, lambda](EdgeId e, Context ctx) {
      return objective.evaluate_unchecked(e, ctx) +
             lambda * constraint.evaluate_unchecked(e, ctx);
    };
  };

  auto cheapest = solve(
      [&](EdgeId e, Context ctx) { return objective.evaluate_unchecked(e, ctx); });
  if (!cheapest) return finish(std::nullopt);
  if (cheapest->delay <= bound) return finish(cheapest->path);

  auto fastest = solve(
      [&](EdgeId e, Context ctx) { return constraint.evaluate_unchecked(e, ctx); });
  if (!fastest || fastest->delay > bound) return finish(std::nullopt);

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const double denominator = fastest->delay - cheapest->delay;
    if (denominator == 0.0) break;
    const double lambda = (cheapest->cost - fastest->cost) / denominator;
    auto r = solve(aggregated_weight(lambda));
    if (!r) break;
    const double aggregated = r->cost + lambda * r->delay;
    const double reference = cheapest->cost + lambda * cheapest->delay;
    const double tolerance = 1e-12 * std::max(1.0, std::abs(reference));
    if (aggregated >= reference - tolerance) break;
    if (r->path == cheapest->path || r->path == fastest->path) break;
    if (r->delay <= bound) {
      fastest = std::move(r);
    } else {
      cheapest = std::move(r);
    }
  }
  return finish(fastest->path);
}

}  // namespace mnroute

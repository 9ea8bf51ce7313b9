#include <stdexcept>

#include "search_support.hpp"

namespace mnroute {

RoutingResult make_result(const Graph& graph, const RoutingRequest& request,
                          std::optional<Path> path, SearchStats stats) {
  RoutingResult result;
  result.stats = stats;
  if (!path) return result;
  Verdict verdict = feasible(graph, request.metrics, *path);
  if (!verdict.feasible) return result;
  result.found = FoundPath{std::move(*path), std::move(verdict.combined)};
  return result;
}

double optimization_value(const RoutingRequest& request, const RoutingResult& result) {
  return result.value(request.metrics.optimization_index().value());
}

namespace detail {

void require_endpoints(const Graph& graph, const RoutingRequest& request) {
  if (!graph.contains(request.source) || !graph.contains(request.destination)) {
    throw std::invalid_argument("request endpoint not in graph");
  }
  request.metrics.optimization();
}

}  // namespace detail
}  // namespace mnroute

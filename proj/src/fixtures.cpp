#include "mnroute/topology_io.hpp"

namespace mnroute {

namespace {

Graph figure_graph() {
  Graph g;
  for (const char* name : {"A", "B", "C", "D", "E", "F"}) g.add_node(name);
  for (auto [u, v] : {std::pair{"A", "B"}, {"B", "C"}, {"A", "C"}, {"C", "E"}, {"C", "D"},
                      {"D", "F"}, {"F", "E"}}) {
    g.add_edge(g.node(u), g.node(v));
  }
  return g;
}

}  // namespace

Fixture fixture(std::string_view name) {
  Graph g = figure_graph();
  const NodeId a = g.node("A");
  const NodeId e = g.node("E");
  if (name == "fig1") {
    std::map<TableSource::Key, double> delay{{{g.edge("C", "E"), {g.edge("A", "C")}}, 5.0}};
    MetricSet metrics{MetricSpec("delay", MetricOrder::finite(1), Role::kGlobalOptimization,
                                 std::make_shared<TableSource>(std::move(delay), 1.0))};
    return Fixture{std::move(g), std::move(metrics), a, e};
  }
  if (name == "fig2") {
    std::map<EdgeId, double> delays;
    for (std::size_t i = 0; i < g.edge_count(); ++i) delays[EdgeId{i}] = 1.0;
    delays[g.edge("A", "C")] = 5.0;
    auto source = std::make_shared<AccumulatedSource>(std::move(delays),
                                                      std::set<EdgeId>{g.edge("C", "E")});
    MetricSet metrics{hop_count_metric(Role::kGlobalOptimization),
                      MetricSpec("accumulated_delay", MetricOrder::infinite(),
                                 Role::kLocalConstraint, std::move(source), 4.0)};
    return Fixture{std::move(g), std::move(metrics), a, e};
  }
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace mnroute

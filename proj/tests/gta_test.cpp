#include <gtest/gtest.h>

#include "mnroute/gta.hpp"
#include "mnroute/topology_io.hpp"
#include "test_support.hpp"

namespace mnroute {
namespace {

std::size_t expected_edges(const Graph& g) {
  std::size_t total = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) total += g.in_degree(g.source(EdgeId{e})) + 1;
  return total;
}

TEST(Gta, Fig1Sizes) {
  const Fixture f = fixture("fig1");
  const TransformedGraph once = gta_once(f.graph);
  EXPECT_EQ(once.graph().node_count(), 13u);
  EXPECT_EQ(once.graph().edge_count(), 14u);
  EXPECT_EQ(once.applications(), 1u);
  EXPECT_FALSE(once.has_sinks());

  const TransformedGraph sunk = add_sinks(once);
  EXPECT_EQ(sunk.graph().node_count(), 19u);
  EXPECT_EQ(sunk.graph().edge_count(), 14u + 13u);
  EXPECT_EQ(sunk.copy_node_count(), 13u);
  EXPECT_EQ(sunk.copy_edge_count(), 14u);

  const TransformedGraph twice = gta_once(once);
  EXPECT_EQ(twice.graph().node_count(), 13u + 14u);
  EXPECT_EQ(twice.graph().edge_count(), expected_edges(once.graph()));
  EXPECT_EQ(gta_n(f.graph, 2).graph().node_count(), 27u + 6u);
}

TEST(Gta, SizeLawOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testing::random_graph(seed, 3 + seed % 8, 0.25);
    const TransformedGraph t = gta_once(g);
    EXPECT_EQ(t.graph().node_count(), g.node_count() + g.edge_count());
    EXPECT_EQ(t.graph().edge_count(), expected_edges(g));
    const TransformedGraph s = add_sinks(t);
    EXPECT_EQ(s.graph().node_count(), t.graph().node_count() + g.node_count());
    EXPECT_EQ(s.graph().edge_count(), t.graph().edge_count() + t.graph().node_count());
  }
}

TEST(Gta, NodeLabelsAndProvenance) {
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  const TransformedGraph t = gta_n(g, 1);
  const EdgeId ac = g.edge("A", "C");
  const NodeId c_via_ac = t.graph().node("C|" + std::to_string(ac.value()));
  EXPECT_EQ(t.node(c_via_ac).original, g.node("C"));
  ASSERT_EQ(t.node(c_via_ac).ingress.size(), 1u);
  EXPECT_EQ(t.node(c_via_ac).ingress[0], ac);
  EXPECT_EQ(t.graph().node("A|null"), t.source_copy(g.node("A")));
  EXPECT_EQ(t.graph().node("sink(E)"), t.sink(g.node("E")));

  const TransformedGraph t2 = gta_n(g, 2);
  EXPECT_EQ(t2.graph().label(t2.source_copy(g.node("A"))), "A|null|null");

  // Every copy edge's context chains into its original edge.
  for (const TransformedGraph* tg : {&t, &t2}) {
    for (std::size_t e = 0; e < tg->graph().edge_count(); ++e) {
      const EdgeProvenance& p = tg->edge(EdgeId{e});
      if (p.kind == TransformedKind::kSink) {
        EXPECT_FALSE(p.original);
        continue;
      }
      ASSERT_TRUE(p.original);
      EXPECT_LE(p.context.size(), tg->applications());
      EXPECT_NO_THROW(evaluate(g, hop_count_metric(), *p.original, p.context));
      EXPECT_EQ(tg->node(tg->graph().source(EdgeId{e})).original, g.source(*p.original));
      EXPECT_EQ(tg->node(tg->graph().target(EdgeId{e})).original, g.target(*p.original));
    }
  }
}

TEST(Gta, LiftedOrders) {
  const Fixture f = fixture("fig1");
  const TransformedGraph t = gta_n(f.graph, 1);
  EXPECT_EQ(lift_metric(t, f.metrics.optimization()).order(), MetricOrder::finite(0));
  EXPECT_EQ(lift_metric(t, random_metric(f.graph, MetricOrder::finite(3), 1)).order(),
            MetricOrder::finite(2));
  EXPECT_EQ(lift_metric(t, random_metric(f.graph, MetricOrder::infinite(), 1)).order(),
            MetricOrder::infinite());
  const TransformedGraph t3 = gta_n(f.graph, 3);
  EXPECT_EQ(lift_metric(t3, random_metric(f.graph, MetricOrder::finite(2), 1)).order(),
            MetricOrder::finite(0));
}

TEST(Gta, LiftedValuesMatchOriginalPaths) {
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  const TransformedGraph t = gta_n(g, 1);
  const MetricSpec lifted = lift_metric(t, f.metrics.optimization());
  for (auto labels : {std::vector<std::string>{"A", "B", "C", "E"}, {"A", "C", "E"},
                      {"A", "C", "D", "F", "E"}}) {
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) edges.push_back(g.edge(labels[i], labels[i + 1]));
    const Path p = Path::from_edges(g, edges);
    const Path lp = lift_path(t, p);
    EXPECT_EQ(lp.source(), t.source_copy(p.source()));
    EXPECT_EQ(lp.destination(), t.sink(p.destination()));
    EXPECT_EQ(combine(t.graph(), lifted, lp), combine(g, f.metrics.optimization(), p));
    const RoutingRequest original{p.source(), p.destination(), f.metrics};
    const RoutingResult back = unmap_result(t, original, RoutingResult{FoundPath{lp, {}}, {}});
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(back.path(), p);
  }
  const MetricSpec table = materialize(t, lifted);
  for (std::size_t e = 0; e < t.graph().edge_count(); ++e) {
    EXPECT_EQ(table.evaluate_unchecked(EdgeId{e}, {}), lifted.evaluate_unchecked(EdgeId{e}, {}));
  }
  EXPECT_THROW(materialize(t, lift_metric(t, random_metric(g, MetricOrder::finite(2), 1))),
               std::invalid_argument);
}

TEST(Gta, MappingRequests) {
  const Fixture f = fixture("fig1");
  const TransformedGraph t = gta_n(f.graph, 1);
  const MappedRequest m = map_request(t, {f.source, f.destination, f.metrics});
  EXPECT_EQ(m.source, t.source_copy(f.source));
  EXPECT_EQ(m.destination, t.sink(f.destination));
  EXPECT_EQ(m.metrics.optimization().order(), MetricOrder::finite(0));
  EXPECT_THROW(map_request(gta_once(f.graph), {f.source, f.destination, f.metrics}),
               std::logic_error);
  const RoutingResult not_at_sink{FoundPath{Path::trivial(t.graph(), m.source), {}}, {}};
  EXPECT_THROW(unmap_result(t, {f.source, f.destination, f.metrics}, not_at_sink),
               std::invalid_argument);
}

TEST(Gta, Guards) {
  const Fixture f = fixture("fig1");
  const TransformedGraph t = gta_n(f.graph, 1);
  EXPECT_THROW(gta_once(t), std::invalid_argument);
  EXPECT_THROW(add_sinks(t), std::invalid_argument);
  EXPECT_THROW(add_sink_edges(gta_n(f.graph, 2)), std::invalid_argument);
  EXPECT_THROW(gta_once(f.graph, TransformLimits{10, 100}), ResourceLimitExceeded);
  EXPECT_THROW(gta_once(f.graph, TransformLimits{100, 10}), ResourceLimitExceeded);
  EXPECT_THROW(gta_n(f.graph, 0), std::invalid_argument);
}

TEST(Gta, MultipathGadgetSharesTheEdge) {
  const Fixture f = fixture("fig1");
  const Graph& g = f.graph;
  const TransformedGraph plain = gta_n(g, 1);
  const TransformedGraph t = add_sink_edges(plain);
  EXPECT_TRUE(t.has_gadgets());
  EXPECT_EQ(t.graph().node_count(), plain.graph().node_count() + g.edge_count());
  EXPECT_EQ(t.graph().edge_count(), plain.graph().edge_count() + g.edge_count());

  const EdgeId ce = g.edge("C", "E");
  const Path abce = path_from_labels(g, {"A", "B", "C", "E"});
  const Path ace = path_from_labels(g, {"A", "C", "E"});
  EXPECT_TRUE(transformed_edge_disjoint(plain, lift_path(plain, abce), lift_path(plain, ace)));
  const Path x = lift_path(t, abce);
  const Path y = lift_path(t, ace);
  EXPECT_FALSE(transformed_edge_disjoint(t, x, y));
  const auto shared = *t.gadget_edge(ce);
  EXPECT_NE(std::find(x.edges().begin(), x.edges().end(), shared), x.edges().end());
  EXPECT_NE(std::find(y.edges().begin(), y.edges().end(), shared), y.edges().end());

  // The gadget graph still routes exactly.
  const RoutingRequest r{f.source, f.destination, f.metrics};
  const RoutingResult res = solve_transformed(t, r, [](const Graph& tg, const RoutingRequest& q) {
    return dijkstra(tg, q);
  });
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.value(0), 3.0);
  EXPECT_EQ(lift_metric(t, random_metric(g, MetricOrder::finite(2), 1)).order(),
            MetricOrder::finite(2));
}

}  // namespace
}  // namespace mnroute

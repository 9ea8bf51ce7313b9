#include <gtest/gtest.h>

#include "mnroute/metric_io.hpp"
#include "mnroute/topology_io.hpp"
#include "test_support.hpp"

namespace mnroute {
namespace {

using nlohmann::json;

TEST(MetricIo, TableKeys) {
  const std::vector<EdgeId> ctx{EdgeId{3}, EdgeId{12}};
  EXPECT_EQ(table_key(EdgeId{5}, ctx), "5|3,12");
  EXPECT_EQ(table_key(EdgeId{5}, {}), "5|");
  const auto key = parse_table_key("5|3,12");
  EXPECT_EQ(key.first, EdgeId{5});
  EXPECT_EQ(key.second, ctx);
  EXPECT_TRUE(parse_table_key("0|").second.empty());
  EXPECT_THROW(parse_table_key("5"), std::invalid_argument);
  EXPECT_THROW(parse_table_key("x|1"), std::invalid_argument);
}

TEST(MetricIo, RoundTripPreservesValues) {
  const Fixture f1 = fixture("fig1");
  const Fixture f2 = fixture("fig2");
  const Graph& g = f1.graph;
  MetricSet set{f1.metrics.optimization().with_role(Role::kGlobalConstraint, 3.5),
                random_metric(g, MetricOrder::infinite(), 99, "rand", Role::kGlobalOptimization),
                f2.metrics[1]};
  const MetricSet back = metric_set_from_json(json::parse(metric_set_to_json(set).dump()));
  ASSERT_EQ(back.size(), set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(back[i].name(), set[i].name());
    EXPECT_EQ(back[i].order(), set[i].order());
    EXPECT_EQ(back[i].role(), set[i].role());
    EXPECT_EQ(back[i].limit(), set[i].limit());
  }
  for (const char* labels : {"ABCE", "ACE", "ACDFE"}) {
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; labels[i + 1]; ++i) {
      edges.push_back(g.edge(std::string(1, labels[i]), std::string(1, labels[i + 1])));
    }
    const Path p = Path::from_edges(g, edges);
    for (std::size_t i = 0; i < set.size(); ++i) {
      EXPECT_EQ(combine(g, back[i], p), combine(g, set[i], p)) << labels << " metric " << i;
    }
  }
}

TEST(MetricIo, RejectsBadDocuments) {
  json doc = metric_set_to_json(MetricSet{hop_count_metric()});
  doc["version"] = 7;
  EXPECT_THROW(metric_set_from_json(doc), std::invalid_argument);
  doc["version"] = kSchemaVersion;
  doc["schema"] = "other";
  EXPECT_THROW(metric_set_from_json(doc), std::invalid_argument);
  EXPECT_THROW(metric_from_json(json{{"order", 0}, {"kind", "mystery"}}), std::invalid_argument);
  EXPECT_THROW(metric_from_json(json{{"order", "x"}}), std::invalid_argument);
  EXPECT_THROW(metric_from_json(json{{"order", 0}, {"role", "global_constraint"}}),
               std::invalid_argument);
}

}  // namespace
}  // namespace mnroute

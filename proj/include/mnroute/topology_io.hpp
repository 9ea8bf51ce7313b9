#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mnroute/graph.hpp"
#include "mnroute/gta.hpp"
#include "mnroute/metrics.hpp"

namespace mnroute {

class GraphmlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TopologyRecord {
  std::string name;
  Graph graph;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;  ///< directed edges after expansion
  std::size_t link_count = 0;  ///< edge elements in the file
  bool connected = false;      ///< weakly connected
};

/// Parses a GraphML document. Node ids become node labels; undirected edges
/// become two antiparallel directed edges, directed ones a single edge.
/// Self-loops and parallel edges are kept. Throws GraphmlError.
TopologyRecord parse_graphml(std::string_view xml, std::string name = "graphml");
TopologyRecord load_graphml(const std::filesystem::path& file);

/// Every *.graphml file in `dir`, sorted by file name.
std::vector<TopologyRecord> load_topology_dir(const std::filesystem::path& dir);

/// Conjunctive bounds. Edge bounds count links as they appear in the file.
struct TopologyFilter {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = std::numeric_limits<std::size_t>::max();
  std::size_t max_links = std::numeric_limits<std::size_t>::max();
  bool require_connected = false;

  bool accepts(const TopologyRecord& record) const;

  /// Connected, more than 10 nodes, at most 100 nodes and 200 links.
  static TopologyFilter shortest_path();
  /// The shortest-path filter further limited to fewer than 50 nodes and 100 links.
  static TopologyFilter constrained();
};

/// Stable-order subset accepted by `filter`.
std::vector<TopologyRecord> apply_filter(const std::vector<TopologyRecord>& records,
                                         const TopologyFilter& filter);

struct Fixture {
  Graph graph;
  MetricSet metrics;
  NodeId source;
  NodeId destination;
};

/// "fig1": six nodes A..F, seven edges, an order-1 delay metric where C-E
/// costs 5 after A-C and 1 otherwise; every other edge costs 1.
/// "fig2": same shape, hop-count optimization plus a local constraint on the
/// delay accumulated before C-E (A-C: 5, others 1), threshold 4.
/// Throws std::invalid_argument for other names.
Fixture fixture(std::string_view name);

/// {"schema": "mnroute.graph", "version": 1, "nodes": [label | null, ...],
///  "edges": [[src, dst], ...], "metrics": <metric set, optional>}
nlohmann::json graph_to_json(const Graph& graph, const MetricSet* metrics = nullptr);

struct GraphDocument {
  Graph graph;
  std::optional<MetricSet> metrics;
};

GraphDocument graph_from_json(const nlohmann::json& j);

/// Pretty-printed, keys sorted, newline-terminated.
void write_graph(const std::filesystem::path& file, const Graph& graph,
                 const MetricSet* metrics = nullptr);
GraphDocument read_graph(const std::filesystem::path& file);

/// Graph from a JSON document or, for *.graphml files, a GraphML topology.
GraphDocument load_any_graph(const std::filesystem::path& file);

struct ProvenanceRecord {
  std::size_t applications = 0;
  std::vector<TransformedNode> nodes;
  std::vector<EdgeProvenance> edges;

  friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

ProvenanceRecord provenance_of(const TransformedGraph& tg);

/// {"schema": "mnroute.provenance", "version": 1, "applications": n,
///  "nodes": [{"kind", "original", "ingress"}], "edges": [{"kind", "original", "context"}]}
nlohmann::json provenance_to_json(const ProvenanceRecord& record);
ProvenanceRecord provenance_from_json(const nlohmann::json& j);

std::string read_text(const std::filesystem::path& file);
void write_text(const std::filesystem::path& file, std::string_view text);

}  // namespace mnroute

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mnroute/algorithms.hpp"
#include "mnroute/graph.hpp"
#include "mnroute/metrics.hpp"

namespace mnroute {

enum class TransformedKind {
  kCopy,    ///< (original node, ingress) copy or a copy of an original edge
  kSink,    ///< per-original-node sink, or an edge into it
  kGadget,  ///< multipath gadget node, or the shared edge leaving it
};

struct TransformedNode {
  TransformedKind kind = TransformedKind::kCopy;
  NodeId original;
  /// One ingress per application, each an edge of the previous layer or
  /// nullopt for the null ingress. Empty for sinks and gadgets.
  std::vector<std::optional<EdgeId>> ingress;

  friend bool operator==(const TransformedNode&, const TransformedNode&) = default;
};

struct EdgeProvenance {
  TransformedKind kind = TransformedKind::kCopy;
  /// Original edge for copies (including gadget split edges); nullopt for
  /// sink edges and gadget shared edges.
  std::optional<EdgeId> original;
  /// Original edges preceding `original` that fix its value, oldest first;
  /// at most one per application.
  std::vector<EdgeId> context;

  friend bool operator==(const EdgeProvenance&, const EdgeProvenance&) = default;
};

struct TransformLimits {
  std::size_t max_nodes = 1'000'000;
  std::size_t max_edges = 1'000'000;
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An order-0 view of an Mn graph plus provenance back to the original.
/// Immutable after construction and safe to share between searches.
class TransformedGraph {
 public:
  /// Zero applications: the original graph with identity provenance.
  explicit TransformedGraph(Graph original);

  const Graph& graph() const { return graph_; }
  const Graph& original() const { return *original_; }
  std::size_t applications() const { return applications_; }
  bool has_sinks() const { return !sinks_.empty(); }
  bool has_gadgets() const { return !gadget_edges_.empty(); }

  const TransformedNode& node(NodeId v) const { return nodes_.at(v.index()); }
  const EdgeProvenance& edge(EdgeId e) const { return edges_->at(e.index()); }
  std::shared_ptr<const std::vector<EdgeProvenance>> edge_provenance() const { return edges_; }

  /// The copy of `v` reached through null ingresses only.
  NodeId source_copy(NodeId original) const;
  /// Sink of `v`; throws std::logic_error before add_sinks.
  NodeId sink(NodeId original) const;
  /// Shared gadget edge of an original edge, when add_sink_edges was applied.
  std::optional<EdgeId> gadget_edge(EdgeId original) const;

  /// Node count before sinks and gadgets were added.
  std::size_t copy_node_count() const { return copy_nodes_; }
  std::size_t copy_edge_count() const { return copy_edges_; }

 private:
  TransformedGraph() = default;

  friend TransformedGraph gta_once(const TransformedGraph&, const TransformLimits&);
  friend TransformedGraph add_sinks(const TransformedGraph&, CombinationOperator);
  friend TransformedGraph add_sink_edges(const TransformedGraph&);

  std::shared_ptr<const Graph> original_;
  Graph graph_;
  std::size_t applications_ = 0;
  std::vector<TransformedNode> nodes_;
  std::shared_ptr<const std::vector<EdgeProvenance>> edges_;
  std::vector<NodeId> source_copies_;
  std::vector<NodeId> sinks_;
  std::vector<std::optional<EdgeId>> gadget_edges_;
  std::size_t copy_nodes_ = 0;
  std::size_t copy_edges_ = 0;
};

/// One transformation step: every node is copied once per in-edge plus once
/// for the null ingress, and every edge (u,v) once per copy of u. Input must
/// not carry sinks or gadgets.
TransformedGraph gta_once(const TransformedGraph& layer, const TransformLimits& limits = {});
TransformedGraph gta_once(const Graph& graph, const TransformLimits& limits = {});

/// Connects every copy of each original node to one sink per original node
/// through edges carrying the combiner's identity.
TransformedGraph add_sinks(const TransformedGraph& tg,
                           CombinationOperator combiner = CombinationOperator::kAdditive);

/// `n` applications of gta_once followed by add_sinks once.
TransformedGraph gta_n(const Graph& graph, std::size_t n, const TransformLimits& limits = {});

/// Multipath variant: each copy of original edge e is redirected into a gadget
/// node x_e, which reaches the common head (v, e) through one shared edge.
/// Needs a single application.
TransformedGraph add_sink_edges(const TransformedGraph& tg);

/// True iff two transformed paths share no edge other than edges into sinks,
/// which only aggregate destinations.
bool transformed_edge_disjoint(const TransformedGraph& tg, const Path& a, const Path& b);

/// Metric on the transformed graph equivalent to `metric` on the original:
/// its order drops by the number of applications (floored at zero, Infinite
/// stays Infinite) and values are recovered through provenance.
MetricSpec lift_metric(const TransformedGraph& tg, const MetricSpec& metric);
MetricSet lift_metrics(const TransformedGraph& tg, const MetricSet& metrics);

/// Order-0 lifted metric materialized as a static per-edge table.
MetricSpec materialize(const TransformedGraph& tg, const MetricSpec& lifted);

struct MappedRequest {
  NodeId source;       ///< null-ingress copy of the original source
  NodeId destination;  ///< sink of the original destination
  MetricSet metrics;   ///< lifted metrics

  RoutingRequest request() const { return {source, destination, metrics}; }
};

MappedRequest map_request(const TransformedGraph& tg, const RoutingRequest& request);

/// Projects a transformed-graph result back onto the original graph and
/// re-evaluates it under the original metrics. Throws std::invalid_argument
/// if the path does not end at a sink.
RoutingResult unmap_result(const TransformedGraph& tg, const RoutingRequest& original,
                           const RoutingResult& result);

/// The transformed path from source_copy(p.source()) to sink(p.destination())
/// that corresponds to original path `p`.
Path lift_path(const TransformedGraph& tg, const Path& p);

/// A* heuristic on the transformed graph derived from one on the original.
Heuristic lift_heuristic(const TransformedGraph& tg, Heuristic original);

using Solver = std::function<RoutingResult(const Graph&, const RoutingRequest&)>;

/// map_request, `solver` on the transformed graph, unmap_result.
RoutingResult solve_transformed(const TransformedGraph& tg, const RoutingRequest& request,
                                const Solver& solver);

}  // namespace mnroute

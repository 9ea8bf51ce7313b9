#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mnroute {

/// Dense integer identifier tagged by the kind of graph element it names.
template <typename Tag>
class Id {
 public:
  using value_type = std::uint32_t;

  constexpr Id() = default;
  template <std::integral T>
  constexpr explicit Id(T value) : value_(static_cast<value_type>(value)) {}

  constexpr value_type value() const { return value_; }
  constexpr std::size_t index() const { return value_; }
  constexpr bool valid() const { return value_ != kInvalid; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  static constexpr value_type kInvalid = std::numeric_limits<value_type>::max();
  value_type value_ = kInvalid;
};

using NodeId = Id<struct NodeTag>;
using EdgeId = Id<struct EdgeTag>;

/// Directed multigraph with stable dense ids and insertion-ordered adjacency.
///
/// Parallel edges and self-loops are accepted. Node labels are optional, but
/// when present they are unique within the graph.
class Graph {
 public:
  NodeId add_node(std::optional<std::string> label = std::nullopt);
  EdgeId add_edge(NodeId src, NodeId dst);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool contains(NodeId v) const { return v.valid() && v.index() < node_count(); }
  bool contains(EdgeId e) const { return e.valid() && e.index() < edge_count(); }

  NodeId source(EdgeId e) const;
  NodeId target(EdgeId e) const;

  std::span<const EdgeId> out_edges(NodeId v) const;
  std::span<const EdgeId> in_edges(NodeId v) const;
  std::size_t out_degree(NodeId v) const { return out_edges(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_edges(v).size(); }

  const std::optional<std::string>& label(NodeId v) const;
  std::optional<NodeId> find_node(std::string_view label) const;
  /// Like find_node, but throws std::out_of_range for unknown labels.
  NodeId node(std::string_view label) const;

  /// First edge u->v in insertion order.
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;
  /// Edge between two labelled nodes; throws when absent.
  EdgeId edge(std::string_view from, std::string_view to) const;

  /// Label if present, "#<id>" otherwise.
  std::string node_name(NodeId v) const;
  /// "<src>-<dst>" using node names.
  std::string edge_name(EdgeId e) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  struct Endpoints {
    NodeId source;
    NodeId target;
    friend bool operator==(const Endpoints&, const Endpoints&) = default;
  };

  void check(NodeId v) const;
  void check(EdgeId e) const;

  std::vector<std::optional<std::string>> labels_;
  std::unordered_map<std::string, NodeId> by_label_;
  std::vector<Endpoints> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Ordered edge sequence with its derived node sequence.
///
/// Construction checks that consecutive edges chain. An empty edge list is
/// the trivial path that stays at `source`. Node revisits are rejected unless
/// the caller opts in with Revisits::kAllow.
class Path {
 public:
  enum class Revisits { kForbid, kAllow };

  Path(const Graph& graph, NodeId source, std::vector<EdgeId> edges,
       Revisits revisits = Revisits::kForbid);
  /// Non-empty edge list; the source is the tail of the first edge.
  static Path from_edges(const Graph& graph, std::vector<EdgeId> edges,
                         Revisits revisits = Revisits::kForbid);
  static Path trivial(const Graph& graph, NodeId source);

  NodeId source() const { return nodes_.front(); }
  NodeId destination() const { return nodes_.back(); }
  std::span<const EdgeId> edges() const { return edges_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t hop_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool is_simple() const;

  /// Node names joined by '-', e.g. "A-B-C-E".
  std::string to_string(const Graph& graph) const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<EdgeId> edges_;
  std::vector<NodeId> nodes_;
};

/// True iff the two paths share no edge.
bool edge_disjoint(const Path& a, const Path& b);

/// Node-sequence path from labels, taking the first edge between each pair.
Path path_from_labels(const Graph& graph, std::initializer_list<std::string_view> labels);

/// Undirected connectivity over the directed edges.
bool weakly_connected(const Graph& graph);

}  // namespace mnroute

template <typename Tag>
struct std::hash<mnroute::Id<Tag>> {
  std::size_t operator()(mnroute::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value());
  }
};

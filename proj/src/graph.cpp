#include "mnroute/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace mnroute {

NodeId Graph::add_node(std::optional<std::string> label) {
  const NodeId id{node_count()};
  if (label) {
    if (by_label_.contains(*label)) {
      throw std::invalid_argument("duplicate node label '" + *label + "'");
    }
    by_label_.emplace(*label, id);
  }
  labels_.push_back(std::move(label));
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(NodeId src, NodeId dst) {
  if (!contains(src) || !contains(dst)) {
    throw std::invalid_argument("add_edge: unknown endpoint");
  }
  const EdgeId id{edge_count()};
  edges_.push_back({src, dst});
  out_[src.index()].push_back(id);
  in_[dst.index()].push_back(id);
  return id;
}

void Graph::check(NodeId v) const {
  if (!contains(v)) throw std::out_of_range("unknown node id " + std::to_string(v.value()));
}

void Graph::check(EdgeId e) const {
  if (!contains(e)) throw std::out_of_range("unknown edge id " + std::to_string(e.value()));
}

NodeId Graph::source(EdgeId e) const {
  check(e);
  return edges_[e.index()].source;
}

NodeId Graph::target(EdgeId e) const {
  check(e);
  return edges_[e.index()].target;
}

std::span<const EdgeId> Graph::out_edges(NodeId v) const {
  check(v);
  return out_[v.index()];
}

std::span<const EdgeId> Graph::in_edges(NodeId v) const {
  check(v);
  return in_[v.index()];
}

const std::optional<std::string>& Graph::label(NodeId v) const {
  check(v);
  return labels_[v.index()];
}

std::optional<NodeId> Graph::find_node(std::string_view label) const {
  if (auto it = by_label_.find(std::string(label)); it != by_label_.end()) return it->second;
  return std::nullopt;
}

NodeId Graph::node(std::string_view label) const {
  if (auto v = find_node(label)) return *v;
  throw std::out_of_range("unknown node label '" + std::string(label) + "'");
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  for (EdgeId e : out_edges(u)) {
    if (edges_[e.index()].target == v) return e;
  }
  return std::nullopt;
}

EdgeId Graph::edge(std::string_view from, std::string_view to) const {
  if (auto e = find_edge(node(from), node(to))) return *e;
  throw std::out_of_range("no edge " + std::string(from) + "-" + std::string(to));
}

std::string Graph::node_name(NodeId v) const {
  const auto& l = label(v);
  return l ? *l : "#" + std::to_string(v.value());
}

std::string Graph::edge_name(EdgeId e) const {
  return node_name(source(e)) + "-" + node_name(target(e));
}

Path::Path(const Graph& graph, NodeId source, std::vector<EdgeId> edges, Revisits revisits)
    : edges_(std::move(edges)) {
  if (!graph.contains(source)) throw std::invalid_argument("path source not in graph");
  nodes_.reserve(edges_.size() + 1);
  nodes_.push_back(source);
  for (EdgeId e : edges_) {
    if (!graph.contains(e)) throw std::invalid_argument("path edge not in graph");
    if (graph.source(e) != nodes_.back()) {
      throw std::invalid_argument("path edges do not chain at " + graph.edge_name(e));
    }
    nodes_.push_back(graph.target(e));
  }
  if (revisits == Revisits::kForbid && !is_simple()) {
    throw std::invalid_argument("path revisits a node");
  }
}

Path Path::from_edges(const Graph& graph, std::vector<EdgeId> edges, Revisits revisits) {
  if (edges.empty()) throw std::invalid_argument("from_edges needs at least one edge");
  const NodeId source = graph.source(edges.front());
  return Path(graph, source, std::move(edges), revisits);
}

Path Path::trivial(const Graph& graph, NodeId source) { return Path(graph, source, {}); }

bool Path::is_simple() const {
  std::unordered_set<NodeId> seen;
  for (NodeId v : nodes_) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

std::string Path::to_string(const Graph& graph) const {
  std::string out;
  for (NodeId v : nodes_) {
    if (!out.empty()) out += '-';
    out += graph.node_name(v);
  }
  return out;
}

bool edge_disjoint(const Path& a, const Path& b) {
  std::unordered_set<EdgeId> used(a.edges().begin(), a.edges().end());
  return std::ranges::none_of(b.edges(), [&](EdgeId e) { return used.contains(e); });
}

Path path_from_labels(const Graph& graph, std::initializer_list<std::string_view> labels) {
  if (labels.size() == 0) throw std::invalid_argument("empty label list");
  std::vector<EdgeId> edges;
  auto it = labels.begin();
  std::string_view prev = *it++;
  for (; it != labels.end(); ++it) {
    edges.push_back(graph.edge(prev, *it));
    prev = *it;
  }
  return Path(graph, graph.node(*labels.begin()), std::move(edges));
}

bool weakly_connected(const Graph& graph) {
  if (graph.node_count() == 0) return true;
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> stack{NodeId{0}};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    auto visit = [&](NodeId w) {
      if (!seen[w.index()]) {
        seen[w.index()] = true;
        ++reached;
        stack.push_back(w);
      }
    };
    for (EdgeId e : graph.out_edges(v)) visit(graph.target(e));
    for (EdgeId e : graph.in_edges(v)) visit(graph.source(e));
  }
  return reached == graph.node_count();
}

}  // namespace mnroute

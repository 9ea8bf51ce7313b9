#include "mnroute/gta.hpp"

#include <string>

namespace mnroute {

namespace {

std::string ingress_name(std::optional<EdgeId> q) {
  return q ? std::to_string(q->value()) : "null";
}

/// Value source of a lifted metric. Copies of original edges recover their
/// original context through provenance; sink and shared gadget edges carry
/// the combiner's identity.
class LiftedSource final : public MetricSource {
 public:
  LiftedSource(MetricSpec base, std::shared_ptr<const std::vector<EdgeProvenance>> provenance,
               bool uses_window)
      : base_(std::move(base)), provenance_(std::move(provenance)), uses_window_(uses_window) {}

  double value(EdgeId edge, Context ctx) const override {
    const EdgeProvenance& p = (*provenance_)[edge.index()];
    if (!p.original) return *identity_element(base_.combiner());
    if (!uses_window_ || ctx.empty()) return base_.evaluate_unchecked(*p.original, p.context);
    // Context of the oldest copy edge in the window, then the original edge
    // of every copy edge in the window.
    std::vector<EdgeId> recovered;
    bool started = false;
    for (EdgeId c : ctx) {
      const EdgeProvenance& pc = (*provenance_)[c.index()];
      if (!pc.original) continue;
      if (!started) {
        recovered = pc.context;
        started = true;
      }
      recovered.push_back(*pc.original);
    }
    if (!started) return base_.evaluate_unchecked(*p.original, p.context);
    return base_.evaluate_unchecked(*p.original, recovered);
  }

  double lower_bound(EdgeId edge) const override {
    const EdgeProvenance& p = (*provenance_)[edge.index()];
    if (!p.original) return *identity_element(base_.combiner());
    return base_.source()->lower_bound(*p.original);
  }

 private:
  MetricSpec base_;
  std::shared_ptr<const std::vector<EdgeProvenance>> provenance_;
  bool uses_window_;
};

}  // namespace

TransformedGraph::TransformedGraph(Graph original)
    : original_(std::make_shared<const Graph>(std::move(original))), graph_(*original_) {
  nodes_.resize(graph_.node_count());
  for (std::size_t v = 0; v < graph_.node_count(); ++v) {
    nodes_[v] = TransformedNode{TransformedKind::kCopy, NodeId{v}, {}};
    source_copies_.push_back(NodeId{v});
  }
  auto edges = std::make_shared<std::vector<EdgeProvenance>>(graph_.edge_count());
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
    (*edges)[e] = EdgeProvenance{TransformedKind::kCopy, EdgeId{e}, {}};
  }
  edges_ = std::move(edges);
  copy_nodes_ = graph_.node_count();
  copy_edges_ = graph_.edge_count();
}

NodeId TransformedGraph::source_copy(NodeId original) const {
  return source_copies_.at(original.index());
}

NodeId TransformedGraph::sink(NodeId original) const {
  if (sinks_.empty()) throw std::logic_error("transformed graph has no sinks");
  return sinks_.at(original.index());
}

std::optional<EdgeId> TransformedGraph::gadget_edge(EdgeId original) const {
  if (gadget_edges_.empty()) return std::nullopt;
  return gadget_edges_.at(original.index());
}

TransformedGraph gta_once(const TransformedGraph& layer, const TransformLimits& limits) {
  if (layer.has_sinks() || layer.has_gadgets()) {
    throw std::invalid_argument("gta_once: sinks and gadgets must be added after the last application");
  }
  const Graph& in = layer.graph();
  const std::size_t node_total = in.node_count() + in.edge_count();
  std::size_t edge_total = 0;
  for (std::size_t p = 0; p < in.edge_count(); ++p) {
    edge_total += in.in_degree(in.source(EdgeId{p})) + 1;
  }
  if (node_total > limits.max_nodes || edge_total > limits.max_edges) {
    throw ResourceLimitExceeded("transformation would create " + std::to_string(node_total) +
                                " nodes and " + std::to_string(edge_total) + " edges");
  }

  TransformedGraph out;
  out.original_ = layer.original_;
  out.applications_ = layer.applications_ + 1;

  // Copy (x, null) is base[x]; copy (x, j-th in-edge) is base[x] + 1 + j.
  std::vector<std::size_t> base(in.node_count());
  std::vector<std::size_t> position(in.edge_count());
  out.nodes_.reserve(node_total);
  for (std::size_t x = 0; x < in.node_count(); ++x) {
    const NodeId xv{x};
    const TransformedNode& parent = layer.node(xv);
    base[x] = out.graph_.node_count();
    auto add_copy = [&](std::optional<EdgeId> q) {
      out.graph_.add_node(in.node_name(xv) + "|" + ingress_name(q));
      TransformedNode node{TransformedKind::kCopy, parent.original, parent.ingress};
      node.ingress.push_back(q);
      out.nodes_.push_back(std::move(node));
    };
    add_copy(std::nullopt);
    const auto ins = in.in_edges(xv);
    for (std::size_t j = 0; j < ins.size(); ++j) {
      position[ins[j].index()] = j;
      add_copy(ins[j]);
    }
  }

  auto edges = std::make_shared<std::vector<EdgeProvenance>>();
  edges->reserve(edge_total);
  for (std::size_t pi = 0; pi < in.edge_count(); ++pi) {
    const EdgeId p{pi};
    const NodeId x = in.source(p);
    const NodeId y = in.target(p);
    const NodeId head{base[y.index()] + 1 + position[pi]};
    const EdgeProvenance& from = layer.edge(p);

    out.graph_.add_edge(NodeId{base[x.index()]}, head);
    edges->push_back(EdgeProvenance{TransformedKind::kCopy, from.original, from.context});

    const auto ins = in.in_edges(x);
    for (std::size_t j = 0; j < ins.size(); ++j) {
      out.graph_.add_edge(NodeId{base[x.index()] + 1 + j}, head);
      const EdgeProvenance& via = layer.edge(ins[j]);
      EdgeProvenance prov{TransformedKind::kCopy, from.original, via.context};
      prov.context.push_back(*via.original);
      edges->push_back(std::move(prov));
    }
  }
  out.edges_ = std::move(edges);

  out.source_copies_.reserve(layer.source_copies_.size());
  for (NodeId v : layer.source_copies_) out.source_copies_.push_back(NodeId{base[v.index()]});
  out.copy_nodes_ = out.graph_.node_count();
  out.copy_edges_ = out.graph_.edge_count();
  return out;
}

TransformedGraph gta_once(const Graph& graph, const TransformLimits& limits) {
  return gta_once(TransformedGraph(graph), limits);
}

TransformedGraph add_sinks(const TransformedGraph& tg, CombinationOperator combiner) {
  if (!identity_element(combiner)) {
    throw std::invalid_argument("add_sinks: combiner has no identity element");
  }
  if (tg.has_sinks()) throw std::invalid_argument("add_sinks: sinks already present");
  if (tg.has_gadgets()) throw std::invalid_argument("add_sinks: add sinks before gadgets");

  TransformedGraph out = tg;
  auto edges = std::make_shared<std::vector<EdgeProvenance>>(*tg.edges_);
  const Graph& original = tg.original();
  for (std::size_t v = 0; v < original.node_count(); ++v) {
    out.sinks_.push_back(out.graph_.add_node("sink(" + original.node_name(NodeId{v}) + ")"));
    out.nodes_.push_back(TransformedNode{TransformedKind::kSink, NodeId{v}, {}});
  }
  for (std::size_t x = 0; x < tg.graph().node_count(); ++x) {
    const TransformedNode& node = tg.nodes_[x];
    out.graph_.add_edge(NodeId{x}, out.sinks_[node.original.index()]);
    edges->push_back(EdgeProvenance{TransformedKind::kSink, std::nullopt, {}});
  }
  out.edges_ = std::move(edges);
  return out;
}

TransformedGraph gta_n(const Graph& graph, std::size_t n, const TransformLimits& limits) {
  if (n == 0) throw std::invalid_argument("gta_n needs at least one application");
  TransformedGraph layer(graph);
  for (std::size_t i = 0; i < n; ++i) layer = gta_once(layer, limits);
  return add_sinks(layer);
}

TransformedGraph add_sink_edges(const TransformedGraph& tg) {
  if (tg.applications() != 1) {
    throw std::invalid_argument("add_sink_edges needs a graph transformed exactly once");
  }
  if (tg.has_gadgets()) throw std::invalid_argument("add_sink_edges: gadgets already present");

  const Graph& original = tg.original();
  const Graph& in = tg.graph();
  TransformedGraph out;
  out.original_ = tg.original_;
  out.applications_ = tg.applications_;
  out.nodes_ = tg.nodes_;
  out.source_copies_ = tg.source_copies_;
  out.sinks_ = tg.sinks_;
  out.copy_nodes_ = tg.copy_nodes_;
  out.copy_edges_ = tg.copy_edges_;

  for (std::size_t v = 0; v < in.node_count(); ++v) out.graph_.add_node(in.label(NodeId{v}));

  // After one application every copy of e=(u,v) ends at the copy (v, e).
  std::vector<NodeId> gadget(original.edge_count());
  std::vector<NodeId> head(original.edge_count());
  for (std::size_t t = 0; t < in.edge_count(); ++t) {
    const EdgeProvenance& p = tg.edge(EdgeId{t});
    if (p.kind == TransformedKind::kCopy) head[p.original->index()] = in.target(EdgeId{t});
  }
  for (std::size_t e = 0; e < original.edge_count(); ++e) {
    gadget[e] = out.graph_.add_node("x(" + std::to_string(e) + ")");
    out.nodes_.push_back(TransformedNode{TransformedKind::kGadget, original.target(EdgeId{e}), {}});
  }

  auto edges = std::make_shared<std::vector<EdgeProvenance>>();
  for (std::size_t t = 0; t < in.edge_count(); ++t) {
    const EdgeProvenance& p = tg.edge(EdgeId{t});
    const NodeId tail = in.source(EdgeId{t});
    const NodeId target =
        p.kind == TransformedKind::kCopy ? gadget[p.original->index()] : in.target(EdgeId{t});
    out.graph_.add_edge(tail, target);
    edges->push_back(p);
  }
  for (std::size_t e = 0; e < original.edge_count(); ++e) {
    out.gadget_edges_.push_back(out.graph_.add_edge(gadget[e], head[e]));
    edges->push_back(EdgeProvenance{TransformedKind::kGadget, std::nullopt, {}});
  }
  out.edges_ = std::move(edges);
  return out;
}

bool transformed_edge_disjoint(const TransformedGraph& tg, const Path& a, const Path& b) {
  for (EdgeId x : a.edges()) {
    if (tg.edge(x).kind == TransformedKind::kSink) continue;
    for (EdgeId y : b.edges()) {
      if (x == y) return false;
    }
  }
  return true;
}

MetricSpec lift_metric(const TransformedGraph& tg, const MetricSpec& metric) {
  MetricOrder order = metric.order().reduced_by(tg.applications());
  // In a gadget graph each original hop is a split edge plus a shared edge.
  if (tg.has_gadgets() && !order.is_infinite() && order.depth() > 0) {
    order = MetricOrder::finite(static_cast<std::uint32_t>(2 * order.depth()));
  }
  const bool uses_window = order.is_infinite() || order.depth() > 0;
  return MetricSpec(metric.name(), order, metric.role(),
                    std::make_shared<LiftedSource>(metric, tg.edge_provenance(), uses_window),
                    metric.limit(), metric.combiner());
}

MetricSet lift_metrics(const TransformedGraph& tg, const MetricSet& metrics) {
  MetricSet out;
  for (const auto& m : metrics.all()) out.add(lift_metric(tg, m));
  return out;
}

MetricSpec materialize(const TransformedGraph& tg, const MetricSpec& lifted) {
  if (lifted.order() != MetricOrder::finite(0)) {
    throw std::invalid_argument("only order-0 metrics can be materialized, '" + lifted.name() +
                                "' has order " + lifted.order().to_string());
  }
  std::map<TableSource::Key, double> values;
  for (std::size_t t = 0; t < tg.graph().edge_count(); ++t) {
    values.emplace(TableSource::Key{EdgeId{t}, {}}, lifted.evaluate_unchecked(EdgeId{t}, {}));
  }
  return MetricSpec(lifted.name(), lifted.order(), lifted.role(),
                    std::make_shared<TableSource>(std::move(values), std::nullopt),
                    lifted.limit(), lifted.combiner());
}

MappedRequest map_request(const TransformedGraph& tg, const RoutingRequest& request) {
  const Graph& original = tg.original();
  if (!original.contains(request.source) || !original.contains(request.destination)) {
    throw std::invalid_argument("map_request: endpoint not in the original graph");
  }
  return MappedRequest{tg.source_copy(request.source), tg.sink(request.destination),
                       lift_metrics(tg, request.metrics)};
}

RoutingResult unmap_result(const TransformedGraph& tg, const RoutingRequest& original,
                           const RoutingResult& result) {
  if (!result.ok()) return RoutingResult{std::nullopt, result.stats};
  const Path& path = result.path();
  if (tg.node(path.destination()).kind != TransformedKind::kSink) {
    throw std::invalid_argument("unmap_result: path does not end at a sink");
  }
  std::vector<EdgeId> edges;
  for (EdgeId t : path.edges()) {
    if (const auto& o = tg.edge(t).original) edges.push_back(*o);
  }
  const NodeId source = tg.node(path.source()).original;
  return make_result(tg.original(), original,
                     Path(tg.original(), source, std::move(edges), Path::Revisits::kAllow),
                     result.stats);
}

Path lift_path(const TransformedGraph& tg, const Path& p) {
  const Graph& g = tg.graph();
  NodeId current = tg.source_copy(p.source());
  std::vector<EdgeId> edges;
  for (EdgeId e : p.edges()) {
    std::optional<EdgeId> step;
    for (EdgeId t : g.out_edges(current)) {
      const EdgeProvenance& prov = tg.edge(t);
      if (prov.kind == TransformedKind::kCopy && prov.original == e) {
        step = t;
        break;
      }
    }
    if (!step) throw std::invalid_argument("lift_path: path leaves the transformed graph");
    edges.push_back(*step);
    current = g.target(*step);
    if (tg.node(current).kind == TransformedKind::kGadget) {
      edges.push_back(g.out_edges(current).front());
      current = g.target(edges.back());
    }
  }
  if (tg.has_sinks()) {
    const NodeId sink = tg.sink(p.destination());
    for (EdgeId t : g.out_edges(current)) {
      if (g.target(t) == sink) {
        edges.push_back(t);
        break;
      }
    }
  }
  return Path(g, tg.source_copy(p.source()), std::move(edges), Path::Revisits::kAllow);
}

Heuristic lift_heuristic(const TransformedGraph& tg, Heuristic original) {
  std::vector<std::optional<NodeId>> image(tg.graph().node_count());
  for (std::size_t v = 0; v < image.size(); ++v) {
    const TransformedNode& node = tg.node(NodeId{v});
    if (node.kind != TransformedKind::kSink) image[v] = node.original;
  }
  return [image = std::move(image), h = std::move(original)](NodeId v) {
    const auto& o = image.at(v.index());
    return o ? h(*o) : 0.0;
  };
}

RoutingResult solve_transformed(const TransformedGraph& tg, const RoutingRequest& request,
                                const Solver& solver) {
  const MappedRequest mapped = map_request(tg, request);
  return unmap_result(tg, request, solver(tg.graph(), mapped.request()));
}

}  // namespace mnroute

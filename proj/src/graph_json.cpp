#include "mnroute/metric_io.hpp"
#include "mnroute/topology_io.hpp"

namespace mnroute {

using nlohmann::json;

namespace {

std::string kind_name(TransformedKind kind) {
  switch (kind) {
    case TransformedKind::kCopy:
      return "copy";
    case TransformedKind::kSink:
      return "sink";
    case TransformedKind::kGadget:
      return "gadget";
  }
  return "?";
}

TransformedKind parse_kind(const std::string& text) {
  if (text == "copy") return TransformedKind::kCopy;
  if (text == "sink") return TransformedKind::kSink;
  if (text == "gadget") return TransformedKind::kGadget;
  throw std::invalid_argument("unknown provenance kind '" + text + "'");
}

}  // namespace

json graph_to_json(const Graph& graph, const MetricSet* metrics) {
  json nodes = json::array();
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    const auto& label = graph.label(NodeId{v});
    nodes.push_back(label ? json(*label) : json(nullptr));
  }
  json edges = json::array();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    edges.push_back({graph.source(EdgeId{e}).value(), graph.target(EdgeId{e}).value()});
  }
  json j{{"schema", "mnroute.graph"}, {"version", kSchemaVersion}, {"nodes", nodes},
         {"edges", edges}};
  if (metrics) j["metrics"] = metric_set_to_json(*metrics);
  return j;
}

GraphDocument graph_from_json(const json& j) {
  check_schema(j, "mnroute.graph");
  GraphDocument doc;
  for (const auto& n : j.at("nodes")) {
    doc.graph.add_node(n.is_null() ? std::nullopt : std::optional(n.get<std::string>()));
  }
  for (const auto& e : j.at("edges")) {
    doc.graph.add_edge(NodeId{e.at(0).get<std::uint32_t>()}, NodeId{e.at(1).get<std::uint32_t>()});
  }
  if (j.contains("metrics")) doc.metrics = metric_set_from_json(j.at("metrics"));
  return doc;
}

void write_graph(const std::filesystem::path& file, const Graph& graph, const MetricSet* metrics) {
  write_text(file, graph_to_json(graph, metrics).dump(2) + "\n");
}

GraphDocument read_graph(const std::filesystem::path& file) {
  json j;
  try {
    j = json::parse(read_text(file));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  return graph_from_json(j);
}

GraphDocument load_any_graph(const std::filesystem::path& file) {
  if (file.extension() == ".graphml") return GraphDocument{load_graphml(file).graph, std::nullopt};
  return read_graph(file);
}

ProvenanceRecord provenance_of(const TransformedGraph& tg) {
  ProvenanceRecord record;
  record.applications = tg.applications();
  for (std::size_t v = 0; v < tg.graph().node_count(); ++v) record.nodes.push_back(tg.node(NodeId{v}));
  record.edges = *tg.edge_provenance();
  return record;
}

json provenance_to_json(const ProvenanceRecord& record) {
  json nodes = json::array();
  for (const auto& n : record.nodes) {
    json ingress = json::array();
    for (const auto& q : n.ingress) ingress.push_back(q ? json(q->value()) : json(nullptr));
    nodes.push_back({{"kind", kind_name(n.kind)}, {"original", n.original.value()},
                     {"ingress", ingress}});
  }
  json edges = json::array();
  for (const auto& e : record.edges) {
    json context = json::array();
    for (EdgeId c : e.context) context.push_back(c.value());
    edges.push_back({{"kind", kind_name(e.kind)},
                     {"original", e.original ? json(e.original->value()) : json(nullptr)},
                     {"context", context}});
  }
  return json{{"schema", "mnroute.provenance"}, {"version", kSchemaVersion},
              {"applications", record.applications}, {"nodes", nodes}, {"edges", edges}};
}

ProvenanceRecord provenance_from_json(const json& j) {
  check_schema(j, "mnroute.provenance");
  ProvenanceRecord record;
  record.applications = j.at("applications").get<std::size_t>();
  for (const auto& n : j.at("nodes")) {
    TransformedNode node{parse_kind(n.at("kind").get<std::string>()),
                         NodeId{n.at("original").get<std::uint32_t>()},
                         {}};
    for (const auto& q : n.at("ingress")) {
      node.ingress.push_back(q.is_null() ? std::nullopt
                                         : std::optional(EdgeId{q.get<std::uint32_t>()}));
    }
    record.nodes.push_back(std::move(node));
  }
  for (const auto& e : j.at("edges")) {
    EdgeProvenance prov{parse_kind(e.at("kind").get<std::string>()), std::nullopt, {}};
    if (!e.at("original").is_null()) prov.original = EdgeId{e.at("original").get<std::uint32_t>()};
    for (const auto& c : e.at("context")) prov.context.push_back(EdgeId{c.get<std::uint32_t>()});
    record.edges.push_back(std::move(prov));
  }
  return record;
}

}  // namespace mnroute

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "mnroute/topology_io.hpp"

namespace mnroute {

namespace pt = boost::property_tree;

namespace {

std::optional<std::string> attribute(const pt::ptree& element, const char* name) {
  if (auto attrs = element.get_child_optional("<xmlattr>")) {
    if (auto value = attrs->get_optional<std::string>(name)) return *value;
  }
  return std::nullopt;
}

std::string required_attribute(const pt::ptree& element, const char* name, const char* what) {
  auto value = attribute(element, name);
  if (!value) throw GraphmlError(std::string(what) + " element without '" + name + "' attribute");
  return *value;
}

}  // namespace

TopologyRecord parse_graphml(std::string_view xml, std::string name) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw GraphmlError(name + ": malformed XML: " + e.message() + " at line " +
                       std::to_string(e.line()));
  }
  auto root = doc.get_child_optional("graphml");
  if (!root) throw GraphmlError(name + ": no graphml root element");
  auto graph_element = root->get_child_optional("graph");
  if (!graph_element) throw GraphmlError(name + ": no graph element");

  const bool directed_default = attribute(*graph_element, "edgedefault").value_or("") == "directed";

  TopologyRecord record;
  record.name = std::move(name);
  std::unordered_map<std::string, NodeId> ids;
  for (const auto& [tag, child] : *graph_element) {
    if (tag != "node") continue;
    const std::string id = required_attribute(child, "id", "node");
    if (ids.contains(id)) throw GraphmlError(record.name + ": duplicate node '" + id + "'");
    ids.emplace(id, record.graph.add_node(id));
  }
  auto endpoint = [&](const pt::ptree& edge, const char* which) {
    const std::string id = required_attribute(edge, which, "edge");
    auto it = ids.find(id);
    if (it == ids.end()) {
      throw GraphmlError(record.name + ": edge references unknown node '" + id + "'");
    }
    return it->second;
  };
  for (const auto& [tag, child] : *graph_element) {
    if (tag != "edge") continue;
    const NodeId u = endpoint(child, "source");
    const NodeId v = endpoint(child, "target");
    const auto directed_attr = attribute(child, "directed");
    const bool directed = directed_attr ? *directed_attr == "true" : directed_default;
    record.graph.add_edge(u, v);
    if (!directed) record.graph.add_edge(v, u);
    ++record.link_count;
  }
  record.node_count = record.graph.node_count();
  record.edge_count = record.graph.edge_count();
  record.connected = record.node_count > 0 && weakly_connected(record.graph);
  return record;
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

TopologyRecord load_graphml(const std::filesystem::path& file) {
  return parse_graphml(read_text(file), file.stem().string());
}

std::vector<TopologyRecord> load_topology_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".graphml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<TopologyRecord> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_graphml(f));
  return out;
}

bool TopologyFilter::accepts(const TopologyRecord& record) const {
  return record.node_count >= min_nodes && record.node_count <= max_nodes &&
         record.link_count <= max_links && (!require_connected || record.connected);
}

TopologyFilter TopologyFilter::shortest_path() { return {11, 100, 200, true}; }

TopologyFilter TopologyFilter::constrained() { return {11, 49, 99, true}; }

std::vector<TopologyRecord> apply_filter(const std::vector<TopologyRecord>& records,
                                         const TopologyFilter& filter) {
  std::vector<TopologyRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const TopologyRecord& r) { return filter.accepts(r); });
  return out;
}

}  // namespace mnroute

#include "mnroute/metric_io.hpp"

#include <charconv>
#include <stdexcept>

namespace mnroute {

using nlohmann::json;

namespace {

std::uint32_t parse_id(std::string_view text, std::string_view whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad table key '" + std::string(whole) + "'");
  }
  return v;
}

json order_to_json(MetricOrder order) {
  if (order.is_infinite()) return "inf";
  return order.depth();
}

MetricOrder order_from_json(const json& j) {
  if (j.is_string()) return MetricOrder::parse(j.get<std::string>());
  if (j.is_number_unsigned()) return MetricOrder::finite(j.get<std::uint32_t>());
  throw std::invalid_argument("metric order must be a non-negative integer or \"inf\"");
}

}  // namespace

void check_schema(const json& j, std::string_view schema) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw std::invalid_argument("expected a '" + std::string(schema) + "' document");
  }
  if (j.value("version", -1) != kSchemaVersion) {
    throw std::invalid_argument("unsupported " + std::string(schema) + " version " +
                                j.value("version", json(nullptr)).dump());
  }
}

std::string table_key(EdgeId edge, Context ctx) {
  std::string key = std::to_string(edge.value()) + "|";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(ctx[i].value());
  }
  return key;
}

TableSource::Key parse_table_key(std::string_view key) {
  const auto bar = key.find('|');
  if (bar == std::string_view::npos) {
    throw std::invalid_argument("bad table key '" + std::string(key) + "'");
  }
  TableSource::Key out{EdgeId{parse_id(key.substr(0, bar), key)}, {}};
  std::string_view rest = key.substr(bar + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.second.push_back(EdgeId{parse_id(rest.substr(0, comma), key)});
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

json metric_to_json(const MetricSpec& metric) {
  json j;
  j["name"] = metric.name();
  j["order"] = order_to_json(metric.order());
  j["role"] = to_string(metric.role());
  if (metric.role() != Role::kGlobalOptimization) j["bound"] = metric.limit();

  const MetricSource* source = metric.source().get();
  if (auto table = dynamic_cast<const TableSource*>(source)) {
    j["kind"] = "table";
    json values = json::object();
    for (const auto& [key, v] : table->values()) values[table_key(key.first, key.second)] = v;
    j["explicit_values"] = std::move(values);
    if (table->fallback()) j["default"] = *table->fallback();
  } else if (auto random = dynamic_cast<const RandomSource*>(source)) {
    j["kind"] = "random";
    j["seed"] = random->seed();
  } else if (auto acc = dynamic_cast<const AccumulatedSource*>(source)) {
    j["kind"] = "accumulated";
    json delays = json::object();
    for (const auto& [e, v] : acc->delays()) delays[table_key(e, {})] = v;
    j["delays"] = std::move(delays);
    json checked = json::array();
    for (EdgeId e : acc->checked_edges()) checked.push_back(e.value());
    j["checked_edges"] = std::move(checked);
  } else {
    throw std::invalid_argument("metric '" + metric.name() + "' has a non-serializable source");
  }
  return j;
}

MetricSpec metric_from_json(const json& j) {
  const std::string name = j.value("name", "metric");
  const MetricOrder order = order_from_json(j.at("order"));
  const Role role = parse_role(j.value("role", "optimization"));
  const double limit = j.contains("bound") ? j.at("bound").get<double>()
                                           : std::numeric_limits<double>::infinity();
  const std::string kind = j.value("kind", "table");

  std::shared_ptr<const MetricSource> source;
  if (kind == "table") {
    std::map<TableSource::Key, double> values;
    if (j.contains("explicit_values")) {
      for (const auto& [key, v] : j.at("explicit_values").items()) {
        values.emplace(parse_table_key(key), v.get<double>());
      }
    }
    std::optional<double> fallback;
    if (j.contains("default")) fallback = j.at("default").get<double>();
    source = std::make_shared<TableSource>(std::move(values), fallback);
  } else if (kind == "random") {
    source = std::make_shared<RandomSource>(j.at("seed").get<std::uint64_t>());
  } else if (kind == "accumulated") {
    std::map<EdgeId, double> delays;
    for (const auto& [key, v] : j.at("delays").items()) {
      delays.emplace(parse_table_key(key).first, v.get<double>());
    }
    std::set<EdgeId> checked;
    for (const auto& e : j.at("checked_edges")) checked.insert(EdgeId{e.get<std::uint32_t>()});
    source = std::make_shared<AccumulatedSource>(std::move(delays), std::move(checked));
  } else {
    throw std::invalid_argument("unknown metric kind '" + kind + "'");
  }
  return MetricSpec(name, order, role, std::move(source), limit);
}

json metric_set_to_json(const MetricSet& metrics) {
  json list = json::array();
  for (const auto& m : metrics.all()) list.push_back(metric_to_json(m));
  return json{{"schema", "mnroute.metrics"}, {"version", kSchemaVersion}, {"metrics", list}};
}

MetricSet metric_set_from_json(const json& j) {
  check_schema(j, "mnroute.metrics");
  MetricSet out;
  for (const auto& m : j.at("metrics")) out.add(metric_from_json(m));
  return out;
}

}  // namespace mnroute

#pragma once

#include <string>

#include "json.hpp"
#include "mnroute/metrics.hpp"

namespace mnroute {

/// Metric configuration schema, one object per metric:
///
///   {"name": "delay", "order": 0 | n | "inf", "role": "optimization" |
///    "global_constraint" | "local_constraint", "bound": 3.5,
///    "kind": "table" | "random" | "accumulated", ...}
///
/// kind "table": "explicit_values" maps "edge|ctx" keys to reals, where ctx is
/// a comma-separated list of edge ids (oldest first) and an empty ctx is the
/// null ingress, plus an optional "default". kind "random": "seed".
/// kind "accumulated": per-edge "delays" ("edge|" keys) and "checked_edges".
nlohmann::json metric_to_json(const MetricSpec& metric);
MetricSpec metric_from_json(const nlohmann::json& j);

/// {"schema": "mnroute.metrics", "version": 1, "metrics": [...]}
nlohmann::json metric_set_to_json(const MetricSet& metrics);
MetricSet metric_set_from_json(const nlohmann::json& j);

/// Table key "edge|c1,c2" used by explicit-value maps.
std::string table_key(EdgeId edge, Context ctx);
TableSource::Key parse_table_key(std::string_view key);

inline constexpr int kSchemaVersion = 1;

/// Throws std::invalid_argument unless `j` names `schema` at kSchemaVersion.
void check_schema(const nlohmann::json& j, std::string_view schema);

}  // namespace mnroute

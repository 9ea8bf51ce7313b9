#include <cstdio>
#include <map>

#include "mnroute/experiment.hpp"

namespace mnroute {

using nlohmann::json;

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_ratio(double r, const CellResult& cell) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::logic_error("ratio outside [0,1] for " + cell.topology + "/" + cell.algorithm);
  }
}

}  // namespace

std::string ratios_csv(const ExperimentReport& report) {
  std::string out =
      "topology,algorithm,order,requests,benchmark_solvable,solved,optimal,optimality_ratio,"
      "completeness_ratio,skipped\n";
  for (const auto& c : report.cells) {
    const double o = c.optimality_ratio();
    const double k = c.completeness_ratio();
    check_ratio(o, c);
    check_ratio(k, c);
    out += csv_field(c.topology) + ',' + c.algorithm + ',' + c.order + ',' +
           std::to_string(c.requests) + ',' + std::to_string(c.benchmark_solvable) + ',' +
           std::to_string(c.solved) + ',' + std::to_string(c.optimal) + ',' + fixed(o) + ',' +
           fixed(k) + ',' + csv_field(c.skipped) + '\n';
  }
  return out;
}

std::string ecdf_csv(const std::vector<EcdfPoint>& points) {
  std::string out = "value,fraction\n";
  for (const auto& p : points) out += exact(p.value) + ',' + exact(p.fraction) + '\n';
  return out;
}

std::string impact_csv(const std::vector<ImpactEntry>& impact) {
  std::string out =
      "role,order,algorithm,requests,complete,optimal,expected_complete,expected_optimal,matches\n";
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (const auto& e : impact) {
    const ImpactEntry want = expected_impact(e.role, e.order);
    const bool matches = want.complete == e.complete && want.optimal == e.optimal;
    out += to_string(e.role) + ',' + e.order.to_string() + ',' + e.algorithm + ',' +
           std::to_string(e.requests) + ',' + yn(e.complete) + ',' + yn(e.optimal) + ',' +
           yn(want.complete) + ',' + yn(want.optimal) + ',' + yn(matches) + '\n';
  }
  return out;
}

json report_to_json(const ExperimentReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    json cell{{"topology", c.topology},
              {"algorithm", c.algorithm},
              {"order", c.order},
              {"requests", c.requests},
              {"benchmark_solvable", c.benchmark_solvable},
              {"solved", c.solved},
              {"optimal", c.optimal},
              {"optimality_ratio", c.optimality_ratio()},
              {"completeness_ratio", c.completeness_ratio()},
              {"runtime_samples", c.runtimes.size()}};
    if (!c.skipped.empty()) cell["skipped"] = c.skipped;
    cells.push_back(std::move(cell));
  }
  return json{{"problem", to_string(report.problem)},
              {"notes", report.notes},
              {"skipped_topologies", report.skipped_topologies},
              {"cells", cells}};
}

void emit_report(const ExperimentReport& report, const std::vector<ImpactEntry>& impact,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "ecdf");
  write_text(dir / "ratios.csv", ratios_csv(report));
  write_text(dir / "report.json", report_to_json(report).dump(2) + "\n");
  if (!impact.empty()) write_text(dir / "impact.csv", impact_csv(impact));

  std::map<std::pair<std::string, std::string>, std::vector<const CellResult*>> groups;
  for (const auto& c : report.cells) {
    if (c.skipped.empty()) groups[{c.algorithm, c.order}].push_back(&c);
  }
  for (const auto& [key, cells] : groups) {
    const std::string suffix = key.first + "_" + key.second + ".csv";
    std::vector<double> optimality, completeness, runtimes;
    for (const CellResult* c : cells) {
      optimality.push_back(c->optimality_ratio());
      completeness.push_back(c->completeness_ratio());
      runtimes.insert(runtimes.end(), c->runtimes.begin(), c->runtimes.end());
    }
    write_text(dir / "ecdf" / ("optimality_" + suffix), ecdf_csv(ecdf(optimality)));
    write_text(dir / "ecdf" / ("completeness_" + suffix), ecdf_csv(ecdf(completeness)));
    if (!runtimes.empty()) {
      write_text(dir / "ecdf" / ("runtime_" + suffix), ecdf_csv(ecdf(std::move(runtimes))));
    }
  }
}

}  // namespace mnroute

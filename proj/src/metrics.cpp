#include "mnroute/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mnroute {

std::string MetricOrder::to_string() const {
  return is_infinite() ? "inf" : std::to_string(n_);
}

MetricOrder MetricOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinite") return infinite();
  std::uint32_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad metric order '" + std::string(text) + "'");
  }
  return finite(n);
}

std::optional<double> identity_element(CombinationOperator op) {
  switch (op) {
    case CombinationOperator::kAdditive:
      return 0.0;
  }
  return std::nullopt;
}

double combine_values(CombinationOperator op, double acc, double value) {
  switch (op) {
    case CombinationOperator::kAdditive:
      return acc + value;
  }
  throw std::logic_error("unknown combination operator");
}

std::string to_string(Role role) {
  switch (role) {
    case Role::kLocalConstraint:
      return "local_constraint";
    case Role::kGlobalConstraint:
      return "global_constraint";
    case Role::kGlobalOptimization:
      return "optimization";
  }
  return "?";
}

Role parse_role(std::string_view text) {
  if (text == "local_constraint") return Role::kLocalConstraint;
  if (text == "global_constraint") return Role::kGlobalConstraint;
  if (text == "optimization") return Role::kGlobalOptimization;
  throw std::invalid_argument("bad metric role '" + std::string(text) + "'");
}

TableSource::TableSource(std::map<Key, double> values, std::optional<double> fallback)
    : values_(std::move(values)), fallback_(fallback) {
  for (const auto& [key, v] : values_) {
    auto [it, inserted] = min_per_edge_.emplace(key.first, v);
    if (!inserted) it->second = std::min(it->second, v);
  }
}

double TableSource::value(EdgeId edge, Context ctx) const {
  // Lookup allocates; tables back fixtures and transformed graphs, not the
  // random experiment metrics.
  if (auto it = values_.find(Key{edge, std::vector<EdgeId>(ctx.begin(), ctx.end())});
      it != values_.end()) {
    return it->second;
  }
  if (fallback_) return *fallback_;
  throw std::out_of_range("no table value for edge " + std::to_string(edge.value()) +
                          " in a context of length " + std::to_string(ctx.size()));
}

double TableSource::lower_bound(EdgeId edge) const {
  auto it = min_per_edge_.find(edge);
  if (it == min_per_edge_.end()) {
    return fallback_.value_or(std::numeric_limits<double>::infinity());
  }
  return fallback_ ? std::min(it->second, *fallback_) : it->second;
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double RandomSource::value(EdgeId edge, Context ctx) const {
  std::uint64_t h = splitmix64(seed_ ^ 0x5851f42d4c957f2dULL);
  h = splitmix64(h ^ edge.value());
  h = splitmix64(h ^ (0x100000000ULL + ctx.size()));
  for (EdgeId c : ctx) h = splitmix64(h ^ c.value());
  return 1.0 + static_cast<double>(h >> 11) * 0x1.0p-53;
}

AccumulatedSource::AccumulatedSource(std::map<EdgeId, double> delays,
                                     std::set<EdgeId> checked_edges)
    : delays_(std::move(delays)), checked_(std::move(checked_edges)) {}

double AccumulatedSource::value(EdgeId edge, Context ctx) const {
  if (!checked_.contains(edge)) return 0.0;
  double sum = 0.0;
  for (EdgeId c : ctx) {
    if (auto it = delays_.find(c); it != delays_.end()) sum += it->second;
  }
  return sum;
}

MetricSpec::MetricSpec(std::string name, MetricOrder order, Role role,
                       std::shared_ptr<const MetricSource> source, double limit,
                       CombinationOperator combiner)
    : name_(std::move(name)),
      order_(order),
      role_(role),
      source_(std::move(source)),
      limit_(limit),
      combiner_(combiner) {
  if (!source_) throw std::invalid_argument("metric '" + name_ + "' has no value source");
  if (role_ == Role::kGlobalConstraint && !std::isfinite(limit_)) {
    throw std::invalid_argument("global constraint '" + name_ + "' needs a finite bound");
  }
  if (role_ == Role::kLocalConstraint && std::isnan(limit_)) {
    throw std::invalid_argument("local constraint '" + name_ + "' has a NaN threshold");
  }
}

double MetricSpec::evaluate(const Graph& graph, EdgeId edge, Context ctx) const {
  NodeId expected = graph.source(edge);
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    if (graph.target(*it) != expected) {
      throw std::invalid_argument("context does not chain with edge " + graph.edge_name(edge));
    }
    expected = graph.source(*it);
  }
  return source_->value(edge, order_.truncate(ctx));
}

MetricSpec MetricSpec::with_role(Role role, double limit) const {
  return MetricSpec(name_, order_, role, source_, limit, combiner_);
}

MetricSpec MetricSpec::with_limit(double limit) const {
  return MetricSpec(name_, order_, role_, source_, limit, combiner_);
}

MetricSpec MetricSpec::with_name(std::string name) const {
  return MetricSpec(std::move(name), order_, role_, source_, limit_, combiner_);
}

MetricSet::MetricSet(std::initializer_list<MetricSpec> specs) {
  for (const auto& s : specs) add(s);
}

MetricSet::MetricSet(std::vector<MetricSpec> specs) {
  for (auto& s : specs) add(std::move(s));
}

void MetricSet::add(MetricSpec spec) {
  if (spec.role() == Role::kGlobalOptimization) {
    if (optimization_) throw std::invalid_argument("metric set already has an optimization metric");
    optimization_ = specs_.size();
  }
  specs_.push_back(std::move(spec));
}

const MetricSpec& MetricSet::optimization() const {
  if (!optimization_) throw std::invalid_argument("metric set has no optimization metric");
  return specs_[*optimization_];
}

std::vector<std::size_t> MetricSet::indices(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].role() == role) out.push_back(i);
  }
  return out;
}

std::size_t MetricSet::context_depth() const {
  std::size_t depth = 0;
  for (const auto& s : specs_) depth = std::max(depth, s.order().depth());
  return depth;
}

double evaluate(const Graph& graph, const MetricSpec& metric, EdgeId edge, Context ctx) {
  return metric.evaluate(graph, edge, ctx);
}

double combine_from(const Graph& graph, const MetricSpec& metric, double acc,
                    std::span<const EdgeId> carried, std::span<const EdgeId> tail) {
  std::vector<EdgeId> prefix(carried.begin(), carried.end());
  prefix.reserve(carried.size() + tail.size());
  for (EdgeId e : tail) {
    acc = combine_values(metric.combiner(), acc, metric.evaluate(graph, e, prefix));
    prefix.push_back(e);
  }
  return acc;
}

double combine(const Graph& graph, const MetricSpec& metric, const Path& path) {
  return combine_from(graph, metric, *identity_element(metric.combiner()), {}, path.edges());
}

Verdict feasible(const Graph& graph, const MetricSet& metrics, const Path& path) {
  Verdict verdict;
  verdict.combined.reserve(metrics.size());
  const auto edges = path.edges();
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const MetricSpec& metric = metrics[m];
    double acc = *identity_element(metric.combiner());
    bool ok = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const double v = metric.evaluate(graph, edges[i], edges.first(i));
      if (metric.role() == Role::kLocalConstraint && !metric.admits(v)) ok = false;
      acc = combine_values(metric.combiner(), acc, v);
    }
    if (metric.role() == Role::kGlobalConstraint && !(acc <= metric.limit())) ok = false;
    verdict.combined.push_back(acc);
    if (!ok && verdict.feasible) {
      verdict.feasible = false;
      verdict.violated = m;
    }
  }
  return verdict;
}

MetricSpec random_metric(const Graph& /*graph*/, MetricOrder order, std::uint64_t seed,
                         std::string name, Role role, double limit) {
  return MetricSpec(std::move(name), order, role, std::make_shared<RandomSource>(seed), limit);
}

MetricSpec hop_count_metric(Role role, double limit) {
  return MetricSpec("hops", MetricOrder::finite(0), role,
                    std::make_shared<TableSource>(std::map<TableSource::Key, double>{}, 1.0),
                    limit);
}

double global_min_edge_value(const Graph& graph, const MetricSpec& metric) {
  if (graph.edge_count() == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    best = std::min(best, metric.source()->lower_bound(EdgeId{e}));
  }
  return best;
}

}  // namespace mnroute

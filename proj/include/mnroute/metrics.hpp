#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mnroute/graph.hpp"

namespace mnroute {

/// Sequence of previously traversed edges, oldest first. An empty context is
/// the "null ingress" case of a path starting at the evaluated edge.
using Context = std::span<const EdgeId>;

/// Number of previous edges a metric value depends on: Finite(n) or Infinite.
class MetricOrder {
 public:
  static constexpr MetricOrder finite(std::uint32_t n) { return MetricOrder(n); }
  static constexpr MetricOrder infinite() { return MetricOrder(kInfinite); }

  constexpr bool is_infinite() const { return n_ == kInfinite; }
  /// Window length; size_t max for Infinite.
  constexpr std::size_t depth() const {
    return is_infinite() ? std::numeric_limits<std::size_t>::max() : n_;
  }
  /// Order after `applications` graph transformations, floored at zero.
  constexpr MetricOrder reduced_by(std::size_t applications) const {
    if (is_infinite()) return *this;
    return finite(applications >= n_ ? 0 : n_ - static_cast<std::uint32_t>(applications));
  }
  /// The last `depth()` entries of `ctx`.
  Context truncate(Context ctx) const {
    return ctx.size() <= depth() ? ctx : ctx.last(depth());
  }
  /// "0", "1", ..., or "inf".
  std::string to_string() const;
  static MetricOrder parse(std::string_view text);

  friend constexpr bool operator==(MetricOrder, MetricOrder) = default;

 private:
  static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();
  constexpr explicit MetricOrder(std::uint32_t n) : n_(n) {}
  std::uint32_t n_;
};

/// Link combination operator. Only the additive operator is implemented.
enum class CombinationOperator { kAdditive };

/// Identity element, if the operator has one.
std::optional<double> identity_element(CombinationOperator op);
double combine_values(CombinationOperator op, double acc, double value);

enum class Role { kLocalConstraint, kGlobalConstraint, kGlobalOptimization };

std::string to_string(Role role);
Role parse_role(std::string_view text);

/// Where metric values come from. Implementations are immutable and pure so
/// that one instance can serve concurrent searches.
class MetricSource {
 public:
  virtual ~MetricSource() = default;
  /// Value of `edge` given an already truncated context.
  virtual double value(EdgeId edge, Context ctx) const = 0;
  /// A value no context can go below for `edge`.
  virtual double lower_bound(EdgeId edge) const = 0;
};

/// Values listed per (edge, context) key with an optional fallback.
class TableSource final : public MetricSource {
 public:
  using Key = std::pair<EdgeId, std::vector<EdgeId>>;

  TableSource(std::map<Key, double> values, std::optional<double> fallback);

  double value(EdgeId edge, Context ctx) const override;
  double lower_bound(EdgeId edge) const override;

  const std::map<Key, double>& values() const { return values_; }
  const std::optional<double>& fallback() const { return fallback_; }

 private:
  std::map<Key, double> values_;
  std::optional<double> fallback_;
  std::map<EdgeId, double> min_per_edge_;
};

/// Seeded hash of (edge, context) mapped uniformly into [1, 2). Values are
/// computed on demand, so the Infinite order needs no storage.
class RandomSource final : public MetricSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  double value(EdgeId edge, Context ctx) const override;
  double lower_bound(EdgeId) const override { return 1.0; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Sum of per-edge delays over the context, reported only at checked edges
/// (zero elsewhere). Models burstiness accumulated before entering a link.
class AccumulatedSource final : public MetricSource {
 public:
  AccumulatedSource(std::map<EdgeId, double> delays, std::set<EdgeId> checked_edges);

  double value(EdgeId edge, Context ctx) const override;
  double lower_bound(EdgeId) const override { return 0.0; }

  const std::map<EdgeId, double>& delays() const { return delays_; }
  const std::set<EdgeId>& checked_edges() const { return checked_; }

 private:
  std::map<EdgeId, double> delays_;
  std::set<EdgeId> checked_;
};

/// One metric: order, role, value source and combiner.
///
/// `limit` is the bound of a global constraint or the threshold of a local
/// constraint, and is ignored for optimization metrics.
class MetricSpec {
 public:
  MetricSpec(std::string name, MetricOrder order, Role role,
             std::shared_ptr<const MetricSource> source,
             double limit = std::numeric_limits<double>::infinity(),
             CombinationOperator combiner = CombinationOperator::kAdditive);

  const std::string& name() const { return name_; }
  MetricOrder order() const { return order_; }
  Role role() const { return role_; }
  double limit() const { return limit_; }
  CombinationOperator combiner() const { return combiner_; }
  const std::shared_ptr<const MetricSource>& source() const { return source_; }

  /// Checks that the context window chains with `edge` before evaluating.
  double evaluate(const Graph& graph, EdgeId edge, Context ctx) const;
  /// Hot-path variant for search code that builds contexts itself.
  double evaluate_unchecked(EdgeId edge, Context ctx) const {
    return source_->value(edge, order_.truncate(ctx));
  }
  /// Local-constraint predicate for one edge.
  bool admits(double value) const { return value <= limit_; }

  MetricSpec with_role(Role role, double limit = std::numeric_limits<double>::infinity()) const;
  MetricSpec with_limit(double limit) const;
  MetricSpec with_name(std::string name) const;

 private:
  std::string name_;
  MetricOrder order_;
  Role role_;
  std::shared_ptr<const MetricSource> source_;
  double limit_;
  CombinationOperator combiner_;
};

/// Request metrics: at most one optimization metric plus any number of
/// global and local constraints, kept in insertion order.
class MetricSet {
 public:
  MetricSet() = default;
  MetricSet(std::initializer_list<MetricSpec> specs);
  explicit MetricSet(std::vector<MetricSpec> specs);

  void add(MetricSpec spec);

  std::span<const MetricSpec> all() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  const MetricSpec& operator[](std::size_t i) const { return specs_[i]; }

  std::optional<std::size_t> optimization_index() const { return optimization_; }
  /// Throws std::invalid_argument when there is no optimization metric.
  const MetricSpec& optimization() const;
  std::vector<std::size_t> indices(Role role) const;
  /// Largest context window any metric needs (size_t max if Infinite).
  std::size_t context_depth() const;

 private:
  std::vector<MetricSpec> specs_;
  std::optional<std::size_t> optimization_;
};

/// Value of `edge` under `ctx` for `metric`; throws std::invalid_argument if
/// the context does not chain with the edge.
double evaluate(const Graph& graph, const MetricSpec& metric, EdgeId edge, Context ctx);

/// Fold of the metric over the path, each edge seeing all preceding edges.
double combine(const Graph& graph, const MetricSpec& metric, const Path& path);

/// Continues a fold over `tail` with `carried` as the context prefix.
double combine_from(const Graph& graph, const MetricSpec& metric, double acc,
                    std::span<const EdgeId> carried, std::span<const EdgeId> tail);

struct Verdict {
  bool feasible = true;
  /// Combined value per metric, aligned with MetricSet::all().
  std::vector<double> combined;
  /// First violated metric, if any.
  std::optional<std::size_t> violated;
};

/// Feasibility of a path: every edge passes every local predicate under its
/// path context, and every global constraint's combined value is within
/// its bound.
Verdict feasible(const Graph& graph, const MetricSet& metrics, const Path& path);

/// Random metric with values in [1, 2), deterministic in `seed`.
MetricSpec random_metric(const Graph& graph, MetricOrder order, std::uint64_t seed,
                         std::string name = "random",
                         Role role = Role::kGlobalOptimization,
                         double limit = std::numeric_limits<double>::infinity());

/// Static metric with value 1 on every edge.
MetricSpec hop_count_metric(Role role = Role::kGlobalOptimization,
                            double limit = std::numeric_limits<double>::infinity());

/// Smallest per-edge lower bound over the whole graph (0 for an edgeless graph).
double global_min_edge_value(const Graph& graph, const MetricSpec& metric);

}  // namespace mnroute

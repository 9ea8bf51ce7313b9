#pragma once

// Shared bookkeeping for the label-based searches.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>
#include <vector>

#include "mnroute/algorithms.hpp"

namespace mnroute::detail {

struct Label {
  NodeId node;
  EdgeId via;                // invalid for a root label
  std::int64_t parent = -1;  // -1 for a root label
  std::uint32_t hops = 0;
  double cost = 0.0;  // accumulated search cost
  double key = 0.0;   // primary queue priority
  double key2 = 0.0;  // secondary priority (CBF orders by constraint, then cost)
};

/// Labels with parent links. Queue order is (key, key2, hops, edge id
/// sequence), which makes every search reproducible.
class LabelArena {
 public:
  std::size_t add(const Label& label) {
    labels_.push_back(label);
    return labels_.size() - 1;
  }
  void pop_back() { labels_.pop_back(); }
  const Label& operator[](std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return labels_.size(); }

  /// Edges leading to label `i`, oldest first.
  std::vector<EdgeId> edges(std::size_t i) const {
    std::vector<EdgeId> out;
    out.reserve(labels_[i].hops);
    for (auto j = static_cast<std::int64_t>(i); labels_[j].parent >= 0; j = labels_[j].parent) {
      out.push_back(labels_[j].via);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// The last `depth` edges leading to label `i`, oldest first.
  void context(std::size_t i, std::size_t depth, std::vector<EdgeId>& out) const {
    out.clear();
    for (auto j = static_cast<std::int64_t>(i); labels_[j].parent >= 0 && out.size() < depth;
         j = labels_[j].parent) {
      out.push_back(labels_[j].via);
    }
    std::reverse(out.begin(), out.end());
  }

  bool before(std::size_t a, std::size_t b) const {
    const Label& x = labels_[a];
    const Label& y = labels_[b];
    if (x.key != y.key) return x.key < y.key;
    if (x.key2 != y.key2) return x.key2 < y.key2;
    if (x.hops != y.hops) return x.hops < y.hops;
    const auto ex = edges(a);
    const auto ey = edges(b);
    return std::lexicographical_compare(ex.begin(), ex.end(), ey.begin(), ey.end());
  }

 private:
  std::vector<Label> labels_;
};

struct QueueOrder {
  const LabelArena* arena;
  bool operator()(std::size_t a, std::size_t b) const { return arena->before(b, a); }
};

using LabelQueue = std::priority_queue<std::size_t, std::vector<std::size_t>, QueueOrder>;

inline LabelQueue make_queue(const LabelArena& arena) { return LabelQueue(QueueOrder{&arena}); }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// True iff every local constraint of `metrics` admits `edge` under `ctx`.
inline bool locals_admit(const MetricSet& metrics, std::span<const std::size_t> locals,
                         EdgeId edge, Context ctx) {
  for (std::size_t i : locals) {
    const MetricSpec& m = metrics[i];
    if (!m.admits(m.evaluate_unchecked(edge, ctx))) return false;
  }
  return true;
}

/// Combined value of `metric` along `edges` (no chaining checks).
inline double path_value(const MetricSpec& metric, std::span<const EdgeId> edges) {
  double acc = *identity_element(metric.combiner());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    acc = combine_values(metric.combiner(), acc, metric.evaluate_unchecked(edges[i], edges.first(i)));
  }
  return acc;
}

using EdgeWeight = std::function<double(EdgeId, Context)>;

struct NodeSearchOutcome {
  std::optional<Path> path;
  double cost = 0.0;
};

/// Node-label best-first search shared by Dijkstra, A* and LARAC's inner
/// solver. `weight` sees the context of the tail node's settled path.
NodeSearchOutcome node_search(const Graph& graph, NodeId source, NodeId destination,
                              const MetricSet& metrics, const EdgeWeight& weight,
                              const Heuristic* heuristic, SearchStats& stats);

void require_endpoints(const Graph& graph, const RoutingRequest& request);

}  // namespace mnroute::detail

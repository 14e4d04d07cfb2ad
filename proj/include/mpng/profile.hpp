#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mpng/config.hpp"
#include "mpng/graph.hpp"
#include "mpng/rng.hpp"

namespace mpng {

/// Empirical distribution of second-shortest-path lengths over sampled edges.
struct SpathHistogram {
  static constexpr int kUnreachable = -1;

  std::map<int, double> by_distance;  ///< distance (>= 2) -> probability
  double unreachable = 0.0;           ///< bridges and paths longer than the cap
  std::size_t sample_size = 0;

  bool empty() const { return sample_size == 0; }

  double total() const {
    double s = unreachable;
    for (const auto& [d, p] : by_distance) s += p;
    return s;
  }

  /// Draws a distance, or kUnreachable. Must not be empty.
  int draw(SeededRng& rng) const {
    double x = rng.uniform() * total();
    for (const auto& [d, p] : by_distance) {
      if (x < p) return d;
      x -= p;
    }
    if (unreachable > 0.0) return kUnreachable;
    return by_distance.rbegin()->first;
  }

  friend bool operator==(const SpathHistogram&, const SpathHistogram&) = default;
};

/// Properties of one hierarchy level that steer editing and interpolation.
struct PropertyProfile {
  SpathHistogram spath;
  std::map<int, double> loop_closure;        ///< walk length -> closure probability
  std::vector<std::size_t> aggregate_sizes;  ///< sizes of the aggregates formed from this level
  std::size_t level_index = 0;
};

namespace detail {

/// BFS rings around `source` up to depth `max_depth`, skipping edge {skip_a, skip_b}.
/// Returns distance per node (-1 when unreached) and stops early at `target`.
inline std::vector<int> bfs_distances(const Graph& g, NodeId source, int max_depth,
                                      std::optional<NodePair> skip = std::nullopt,
                                      std::optional<NodeId> target = std::nullopt) {
  std::vector<int> dist(g.num_nodes(), -1);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (int depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    std::vector<NodeId> next;
    for (NodeId x : frontier) {
      for (const Neighbor& nb : g.neighbors(x)) {
        if (dist[nb.node] != -1) continue;
        if (skip && make_pair_key(x, nb.node) == *skip) continue;
        dist[nb.node] = depth + 1;
        if (target && nb.node == *target) return dist;
        next.push_back(nb.node);
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace detail

/// Hop length of the shortest u-v path avoiding edge {u,v}; nullopt if there is
/// none within `cap` hops (in particular when {u,v} is a bridge).
inline std::optional<int> second_shortest_path(const Graph& g, NodeId u, NodeId v, int cap = 20) {
  if (!g.contains(u) || !g.contains(v) || !g.has_edge(u, v))
    throw PreconditionError("second_shortest_path: {u,v} is not an edge");
  const auto dist = detail::bfs_distances(g, u, cap, make_pair_key(u, v), v);
  if (dist[v] < 0) return std::nullopt;
  return dist[v];
}

/// Histogram of second_shortest_path over min(sample_size, m) distinct edges
/// drawn uniformly without replacement.
inline SpathHistogram estimate_spath_distribution(const Graph& g, std::size_t sample_size,
                                                  SeededRng& rng, int cap = 20) {
  SpathHistogram hist;
  std::vector<NodePair> edges = g.edge_pairs();
  const std::size_t k = std::min(sample_size, edges.size());
  if (k == 0) return hist;
  // partial Fisher-Yates
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(edges[i], edges[i + rng.index(edges.size() - i)]);
  }
  std::map<int, std::size_t> counts;
  std::size_t unreachable = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (auto d = second_shortest_path(g, edges[i].first, edges[i].second, cap)) {
      ++counts[*d];
    } else {
      ++unreachable;
    }
  }
  const double denom = static_cast<double>(k);
  for (const auto& [d, c] : counts) hist.by_distance[d] = static_cast<double>(c) / denom;
  hist.unreachable = static_cast<double>(unreachable) / denom;
  hist.sample_size = k;
  return hist;
}

/// Uniform node at exact BFS distance d from u; when that ring is empty, the
/// nearest nonempty ring at distance >= 2 (ties toward the smaller distance).
inline std::optional<NodeId> sample_node_at_distance(const Graph& g, NodeId u, int d,
                                                     SeededRng& rng, int cap = 20) {
  if (!g.contains(u)) throw PreconditionError("sample_node_at_distance: unknown node");
  if (d < 2) throw PreconditionError("sample_node_at_distance: distance must be >= 2");
  const auto dist = detail::bfs_distances(g, u, std::max(d, cap));
  std::map<int, std::vector<NodeId>> rings;
  for (NodeId x = 0; x < g.num_nodes(); ++x)
    if (dist[x] >= 2) rings[dist[x]].push_back(x);
  if (rings.empty()) return std::nullopt;
  const std::vector<NodeId>* best = nullptr;
  int best_gap = 0;
  for (const auto& [r, nodes] : rings) {
    const int gap = std::abs(r - d);
    if (best == nullptr || gap < best_gap) {
      best = &nodes;
      best_gap = gap;
    }
  }
  return rng.pick(*best);
}

/// Fraction of non-backtracking random walks of each length in [3, max_len]
/// that end where they started. Walks start at uniformly drawn nodes of degree
/// >= 2; a walk that reaches a dead end counts as open.
inline std::map<int, double> estimate_loop_closure(const Graph& g, int max_len, std::size_t samples,
                                                   SeededRng& rng) {
  if (max_len < 3) throw PreconditionError("estimate_loop_closure: max_len must be >= 3");
  std::map<int, double> out;
  std::vector<NodeId> starts;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (g.degree(v) >= 2) starts.push_back(v);
  if (starts.empty() || samples == 0) return out;
  for (int len = 3; len <= max_len; ++len) {
    std::size_t closed = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      const NodeId start = rng.pick(starts);
      NodeId prev = start;
      NodeId cur = start;
      bool stuck = false;
      for (int step = 0; step < len; ++step) {
        auto nbrs = g.neighbors(cur);
        const std::size_t options = step == 0 ? nbrs.size() : nbrs.size() - 1;
        if (options == 0) {
          stuck = true;
          break;
        }
        std::size_t pick = rng.index(options);
        if (step > 0) {
          // skip the edge we arrived by
          for (std::size_t i = 0; i <= pick; ++i) {
            if (nbrs[i].node == prev) {
              ++pick;
              break;
            }
          }
        }
        prev = cur;
        cur = nbrs[pick].node;
      }
      if (!stuck && cur == start) ++closed;
    }
    out[len] = static_cast<double>(closed) / static_cast<double>(samples);
  }
  return out;
}

inline PropertyProfile measure_profile(const Graph& g, const GeneratorConfig& config,
                                       std::size_t level, SeededRng& rng) {
  PropertyProfile p;
  p.level_index = level;
  p.spath = estimate_spath_distribution(g, config.spath_sample_size(g.num_edges()), rng,
                                        config.spath_cap);
  p.loop_closure = estimate_loop_closure(g, config.loop_max_len, config.loop_samples, rng);
  return p;
}

}  // namespace mpng

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "mpng/config.hpp"
#include "mpng/graph.hpp"
#include "mpng/ledger.hpp"
#include "mpng/planarity.hpp"
#include "mpng/profile.hpp"
#include "mpng/rng.hpp"

namespace mpng {

struct EditOutcome {
  Graph graph;
  EditLedger ledger;
  std::size_t attempted_insertions = 0;
  std::size_t dropped_insertions = 0;
  std::size_t deletions = 0;
  std::size_t added_nodes = 0;
};

namespace detail {

inline std::size_t scaled_count(double rate, std::size_t base) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(base)));
}

/// Partner for an edge out of `u` in the bridge-like class: a non-neighbor in
/// another component if there is one, else any non-neighbor.
inline std::optional<NodeId> pick_unreachable_partner(const Graph& g, NodeId u, SeededRng& rng) {
  const auto label = component_labels(g);
  std::vector<NodeId> other_component;
  std::vector<NodeId> non_neighbor;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (x == u || g.has_edge(u, x)) continue;
    non_neighbor.push_back(x);
    if (label[x] != label[u]) other_component.push_back(x);
  }
  if (!other_component.empty()) return rng.pick(other_component);
  if (!non_neighbor.empty()) return rng.pick(non_neighbor);
  return std::nullopt;
}

}  // namespace detail

/// Randomizes a level graph while keeping it planar.
///
/// Deletes round(edge_edit_rate * m) uniformly drawn edges, then performs that
/// many insertions plus round(edge_growth_rate * m) more. Each insertion picks
/// a random node u and a partner at a distance drawn from the profile's spath
/// distribution; a draw is accepted only if the edge is new and keeps the
/// graph planar. After `retries` failed re-draws the insertion is dropped.
/// Node growth is handled by rescale_graph.
inline EditOutcome edit_graph(const Graph& g, const PropertyProfile& profile,
                              const EditRates& rates, SeededRng& rng, int retries,
                              int spath_cap = 20) {
  rates.validate();
  EditOutcome out{g, {}, 0, 0, 0, 0};
  Graph& h = out.graph;
  const std::size_t m = g.num_edges();
  const std::size_t deletions = detail::scaled_count(rates.edge_edit_rate, m);
  const std::size_t insertions = deletions + detail::scaled_count(rates.edge_growth_rate, m);

  if (deletions > 0) {
    std::vector<NodePair> edges = g.edge_pairs();
    for (std::size_t i = 0; i < deletions; ++i) {
      std::swap(edges[i], edges[i + rng.index(edges.size() - i)]);
      h.remove_edge(edges[i].first, edges[i].second);
      out.ledger.delete_edge(edges[i].first, edges[i].second);
    }
    out.deletions = deletions;
  }

  // Without an spath sample there is nothing to steer insertions by.
  if (profile.spath.empty() || h.num_nodes() < 2 || insertions == 0) return out;

  PlanarityGuard guard(h);
  for (std::size_t i = 0; i < insertions; ++i) {
    ++out.attempted_insertions;
    bool placed = false;
    for (int attempt = 0; attempt <= retries && !placed; ++attempt) {
      const NodeId u = static_cast<NodeId>(rng.index(h.num_nodes()));
      const int d = profile.spath.draw(rng);
      std::optional<NodeId> v = d == SpathHistogram::kUnreachable
                                    ? detail::pick_unreachable_partner(h, u, rng)
                                    : sample_node_at_distance(h, u, d, rng, spath_cap);
      if (!v || *v == u || h.has_edge(u, *v)) continue;
      if (guard.try_add_edge(u, *v)) {
        h.add_edge(u, *v);
        out.ledger.add_edge(u, *v);
        placed = true;
      }
    }
    if (!placed) ++out.dropped_insertions;
  }
  return out;
}

/// Grows a level graph by round(node_growth_rate * n) nodes.
///
/// Each new node u attaches to a uniformly drawn node v, which gives up one
/// of its other edges to keep its degree. u then takes a target degree drawn
/// from the input degree distribution and connects to nodes in BFS rings of
/// increasing distance around v, as far as planarity allows. Candidates stop
/// at distance `spath_cap` or after `retries` planarity rejections for u.
inline EditOutcome rescale_graph(const Graph& g, const PropertyProfile& profile,
                                 double node_growth_rate, SeededRng& rng, int retries,
                                 int spath_cap = 20) {
  (void)profile;
  EditRates{0.0, 0.0, node_growth_rate}.validate();
  EditOutcome out{g, {}, 0, 0, 0, 0};
  Graph& h = out.graph;
  if (node_growth_rate > 0.0 && g.empty())
    throw ConfigError("cannot rescale an empty graph: no node to attach to");
  const std::size_t count = detail::scaled_count(node_growth_rate, g.num_nodes());
  if (count == 0) return out;

  std::vector<std::size_t> degree_pool;
  for (NodeId v = 0; v < g.num_nodes(); ++v) degree_pool.push_back(g.degree(v));
  PlanarityGuard guard(h);

  for (std::size_t i = 0; i < count; ++i) {
    const NodeId v = static_cast<NodeId>(rng.index(h.num_nodes()));
    const std::size_t degree_before = h.degree(v);
    const NodeId u = h.add_node();
    guard.add_node();
    out.ledger.add_node(u);
    ++out.added_nodes;
    guard.try_add_edge(u, v);
    h.add_edge(u, v);
    out.ledger.add_edge(u, v);
    if (degree_before > 1) {
      std::vector<NodeId> others;
      for (const Neighbor& nb : h.neighbors(v))
        if (nb.node != u) others.push_back(nb.node);
      const NodeId w = rng.pick(others);
      h.remove_edge(v, w);
      guard.remove_edge(v, w);
      out.ledger.delete_edge(v, w);
      ++out.deletions;
    }

    const std::size_t target = std::max<std::size_t>(1, rng.pick(degree_pool));
    if (target <= 1) continue;
    out.attempted_insertions += target - 1;

    // BFS rings around v, nearest first.
    auto dist = detail::bfs_distances(h, v, spath_cap);
    std::map<int, std::vector<NodeId>> rings;
    for (NodeId x = 0; x < h.num_nodes(); ++x)
      if (dist[x] >= 1 && x != u) rings[dist[x]].push_back(x);
    int rejections = 0;
    for (auto& [r, ring] : rings) {
      if (h.degree(u) >= target || rejections > retries) break;
      rng.shuffle(ring);
      for (NodeId x : ring) {
        if (h.degree(u) >= target || rejections > retries) break;
        if (h.has_edge(u, x)) continue;
        if (guard.try_add_edge(u, x)) {
          h.add_edge(u, x);
          out.ledger.add_edge(u, x);
        } else {
          ++rejections;
        }
      }
    }
    out.dropped_insertions += target - h.degree(u);
  }
  return out;
}

}  // namespace mpng

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mpng/coarsen.hpp"
#include "mpng/ledger.hpp"
#include "mpng/planarity.hpp"
#include "mpng/profile.hpp"
#include "mpng/rng.hpp"

namespace mpng {

/// Bookkeeping of the edited-aggregate interpolation.
struct InterpolationStats {
  std::size_t spawned_nodes = 0;
  std::size_t attempted_edges = 0;  ///< fine edges requested by added coarse edges
  std::size_t dropped_edges = 0;    ///< of those, not placed because of planarity
};

namespace detail {

/// Fine id in the interpolated graph for each fine id of the stored level;
/// members of deleted aggregates map to nullopt and the rest are renumbered
/// densely in their original order.
inline std::vector<std::optional<NodeId>> surviving_fine_ids(const AggregationMap& map,
                                                             const EditLedger& ledger) {
  std::vector<std::optional<NodeId>> out(map.num_fine);
  NodeId next = 0;
  for (NodeId v = 0; v < map.num_fine; ++v)
    if (!ledger.deleted_nodes.contains(map.coarse_of[v])) out[v] = next++;
  return out;
}

inline void check_consistency(const Graph& coarse_edited, const EditLedger& ledger,
                              const AggregationMap& map, const Graph& fine_ref) {
  if (map.num_fine != fine_ref.num_nodes())
    throw StructuralError("aggregation map does not describe the reference fine graph");
  const std::size_t nc = map.num_coarse();
  if (coarse_edited.num_nodes() < nc)
    throw StructuralError("edited coarse graph has fewer nodes than the stored level");
  for (NodeId v : ledger.deleted_nodes)
    if (v >= nc) throw StructuralError("ledger deletes a coarse node that was never stored");
  for (NodeId v : ledger.added_nodes)
    if (v < nc || v >= coarse_edited.num_nodes())
      throw StructuralError("ledger adds a coarse node with an invalid id");
  for (const NodePair& e : ledger.deleted_edges)
    if (!map.inter_edge_support.contains(e))
      throw StructuralError("ledger deletes a coarse edge that was never stored");
  for (const NodePair& e : ledger.added_edges) {
    if (map.inter_edge_support.contains(e))
      throw StructuralError("ledger adds a coarse edge that already existed");
    if (e.second >= coarse_edited.num_nodes() || !coarse_edited.has_edge(e.first, e.second))
      throw StructuralError("ledger adds a coarse edge missing from the edited graph");
  }
}

inline bool coarse_edge_survives(const NodePair& e, const EditLedger& ledger) {
  return !ledger.deleted_edges.contains(e) && !ledger.deleted_nodes.contains(e.first) &&
         !ledger.deleted_nodes.contains(e.second);
}

}  // namespace detail

/// Restores the unedited part of a level from stored aggregation data: every
/// member and trapped edge of each surviving aggregate, and the fine support
/// of each surviving coarse edge. The result is a subgraph of `fine_ref`.
inline Graph interpolate_unedited(const Graph& coarse_edited, const EditLedger& ledger,
                                  const AggregationMap& map, const Graph& fine_ref) {
  detail::check_consistency(coarse_edited, ledger, map, fine_ref);
  const auto ids = detail::surviving_fine_ids(map, ledger);
  Graph out;
  for (NodeId v = 0; v < map.num_fine; ++v)
    if (ids[v]) out.add_node(fine_ref.volume(v));
  for (const Edge& e : map.trapped_edges)
    if (ids[e.u] && ids[e.v]) out.add_edge(*ids[e.u], *ids[e.v], e.weight);
  for (const auto& [key, support] : map.inter_edge_support) {
    if (!detail::coarse_edge_survives(key, ledger)) continue;
    for (const Edge& e : support) out.add_edge(*ids[e.u], *ids[e.v], e.weight);
  }
  return out;
}

namespace detail {

/// Members of `candidates` closest to BFS distance `d` from `u`, never adjacent to u.
inline std::optional<NodeId> pick_by_distance(const Graph& g, NodeId u, int d,
                                              const std::vector<NodeId>& candidates,
                                              SeededRng& rng, int cap) {
  const auto dist = bfs_distances(g, u, std::max(d, cap));
  std::vector<NodeId> best;
  int best_gap = 0;
  for (NodeId x : candidates) {
    if (dist[x] < 2) continue;
    const int gap = std::abs(dist[x] - d);
    if (best.empty() || gap < best_gap || (gap == best_gap && dist[x] < dist[best.front()])) {
      best.assign(1, x);
      best_gap = gap;
    } else if (gap == best_gap && dist[x] == dist[best.front()]) {
      best.push_back(x);
    }
  }
  if (best.empty()) return std::nullopt;
  return rng.pick(best);
}

/// Wires `fresh` (a new, still isolated set of nodes) as a random spanning
/// tree, then adds internal edges toward per-node degree targets while the
/// set stays planar on its own.
inline void wire_spawned_aggregate(Graph& g, const std::vector<NodeId>& fresh,
                                   const AggregationMap& map, SeededRng& rng) {
  const std::size_t k = fresh.size();
  for (std::size_t j = 1; j < k; ++j) g.add_edge(fresh[j], fresh[rng.index(j)]);
  if (k < 4) return;  // every graph on <= 3 nodes is already complete or a tree on them

  std::vector<std::size_t> pool;
  double total_degree = 0.0;
  for (const auto& seq : map.fine_degree_seq)
    for (std::size_t d : seq) {
      pool.push_back(d);
      total_degree += static_cast<double>(d);
    }
  if (pool.empty() || total_degree == 0.0) return;
  const double internal_share = 2.0 * static_cast<double>(map.trapped_edges.size()) / total_degree;

  std::vector<std::size_t> target(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double want = std::round(static_cast<double>(rng.pick(pool)) * internal_share);
    target[j] = std::max(g.degree(fresh[j]), static_cast<std::size_t>(want));
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (!g.has_edge(fresh[a], fresh[b])) pairs.emplace_back(a, b);
  rng.shuffle(pairs);

  std::vector<NodePair> local;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (g.has_edge(fresh[a], fresh[b])) local.emplace_back(a, b);
  for (auto [a, b] : pairs) {
    if (g.degree(fresh[a]) >= target[a] || g.degree(fresh[b]) >= target[b]) continue;
    local.emplace_back(a, b);
    if (is_planar_edges(k, local)) {
      g.add_edge(fresh[a], fresh[b]);
    } else {
      local.pop_back();
    }
  }
}

}  // namespace detail

/// Materializes coarse nodes and edges added by editing on top of `partial`
/// (the output of interpolate_unedited).
///
/// An added coarse node becomes a fresh connected aggregate whose size is
/// drawn from the stored aggregate sizes. An added coarse edge becomes a
/// number of fine edges, drawn from the stored inter-aggregate edge counts,
/// between members of the two aggregates. A fine edge that would break
/// planarity is re-drawn up to `retries` times (first guided by the spath
/// distribution, later uniformly) and dropped if no planar choice is found.
inline Graph interpolate_edited(const Graph& coarse_edited, const Graph& partial,
                                const EditLedger& ledger, const AggregationMap& map,
                                const PropertyProfile& profile, SeededRng& rng, int retries,
                                InterpolationStats* stats = nullptr, int spath_cap = 20) {
  InterpolationStats local_stats;
  InterpolationStats& st = stats ? *stats : local_stats;
  Graph g = partial;
  if (ledger.added_nodes.empty() && ledger.added_edges.empty()) return g;

  const auto ids = detail::surviving_fine_ids(map, ledger);
  std::vector<std::vector<NodeId>> fine_sets(coarse_edited.num_nodes());
  for (NodeId v = 0; v < map.num_fine; ++v)
    if (ids[v]) fine_sets[map.coarse_of[v]].push_back(*ids[v]);

  std::vector<std::size_t> sizes = profile.aggregate_sizes;
  if (sizes.empty()) sizes = map.aggregate_sizes();
  if (sizes.empty()) sizes.push_back(1);

  for (NodeId c : ledger.added_nodes) {
    const std::size_t k = std::max<std::size_t>(1, rng.pick(sizes));
    std::vector<NodeId> fresh;
    for (std::size_t j = 0; j < k; ++j) fresh.push_back(g.add_node());
    detail::wire_spawned_aggregate(g, fresh, map, rng);
    st.spawned_nodes += k;
    fine_sets[c] = std::move(fresh);
  }

  std::vector<std::size_t> edge_counts;
  for (const auto& [key, support] : map.inter_edge_support) edge_counts.push_back(support.size());
  if (edge_counts.empty()) edge_counts.push_back(1);

  const int guided_attempts = retries / 2;
  PlanarityGuard guard(g);
  for (const NodePair& ce : ledger.added_edges) {
    const auto& src = fine_sets[ce.first];
    const auto& dst = fine_sets[ce.second];
    if (src.empty() || dst.empty()) continue;
    std::size_t want = rng.pick(edge_counts);
    want = std::min(want, src.size() * dst.size());
    for (std::size_t e = 0; e < want; ++e) {
      ++st.attempted_edges;
      bool placed = false;
      for (int attempt = 0; attempt <= retries && !placed; ++attempt) {
        NodeId a = rng.pick(src);
        std::optional<NodeId> b;
        if (attempt >= 1 && attempt <= guided_attempts && !profile.spath.empty()) {
          const int d = profile.spath.draw(rng);
          if (d != SpathHistogram::kUnreachable)
            b = detail::pick_by_distance(g, a, d, dst, rng, spath_cap);
        }
        if (!b) b = rng.pick(dst);
        if (a == *b || g.has_edge(a, *b)) continue;
        if (guard.try_add_edge(a, *b)) {
          g.add_edge(a, *b);
          placed = true;
        }
      }
      if (!placed) ++st.dropped_edges;
    }
  }
  return g;
}

}  // namespace mpng

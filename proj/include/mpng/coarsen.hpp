#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mpng/config.hpp"
#include "mpng/graph.hpp"
#include "mpng/profile.hpp"
#include "mpng/rng.hpp"

namespace mpng {

/// Fine-to-coarse assignment of one coarsening step (a 0/1 interpolation
/// matrix), plus what is needed to undo it.
///
/// Coarse node `c` is the aggregate seeded by `seeds[c]`; seeds are sorted by
/// fine id, so coarse ids follow fine seed order.
struct AggregationMap {
  std::size_t num_fine = 0;
  std::vector<NodeId> seeds;
  std::vector<NodeId> seed_of;    ///< fine node -> fine id of its seed
  std::vector<NodeId> coarse_of;  ///< fine node -> coarse node
  std::vector<std::vector<NodeId>> members;
  /// Degrees (in the fine graph) of each aggregate's members, sorted.
  std::vector<std::vector<std::size_t>> fine_degree_seq;
  /// Fine edges with both endpoints in the same aggregate.
  std::vector<Edge> trapped_edges;
  /// Coarse edge -> the fine edges it aggregates.
  std::map<NodePair, std::vector<Edge>> inter_edge_support;

  std::size_t num_coarse() const { return seeds.size(); }

  std::vector<std::size_t> aggregate_sizes() const {
    std::vector<std::size_t> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.size());
    return out;
  }
};

/// One level of the coarsening hierarchy.
struct HierarchyLevel {
  Graph graph;
  std::optional<AggregationMap> map;  ///< to the next coarser level; empty at the coarsest
  PropertyProfile profile;
  std::size_t level_index = 0;
};

/// Seed selection with an explicit visit order.
///
/// A visited node joins the seed set when the weight it sends to the current
/// seeds is at most `alpha` times its total weight. Isolated nodes (0/0) count
/// as ratio 0 and always become seeds. Returns seeds sorted by id.
inline std::vector<NodeId> select_seeds_in_order(const Graph& g, double alpha,
                                                 std::span<const NodeId> order) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("alpha must lie in [0,1], got " + std::to_string(alpha));
  std::vector<char> is_seed(g.num_nodes(), 0);
  for (NodeId i : order) {
    double to_seeds = 0.0;
    double total = 0.0;
    for (const Neighbor& n : g.neighbors(i)) {
      total += n.weight;
      if (is_seed[n.node]) to_seeds += n.weight;
    }
    const double ratio = total > 0.0 ? to_seeds / total : 0.0;
    if (ratio <= alpha) is_seed[i] = 1;
  }
  std::vector<NodeId> seeds;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (is_seed[v]) seeds.push_back(v);
  return seeds;
}

inline std::vector<NodeId> select_seeds(const Graph& g, double alpha, SeededRng& rng) {
  std::vector<NodeId> order(g.num_nodes());
  for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
  rng.shuffle(order);
  return select_seeds_in_order(g, alpha, order);
}

/// Assigns every non-seed node to its heaviest seed neighbor (ties broken by
/// `rng`). Non-seeds without a seed neighbor become singleton aggregates.
inline AggregationMap build_aggregation(const Graph& g, std::span<const NodeId> seed_set,
                                        SeededRng& rng) {
  const std::size_t n = g.num_nodes();
  std::vector<char> is_seed(n, 0);
  for (NodeId s : seed_set) {
    if (!g.contains(s)) throw PreconditionError("build_aggregation: unknown seed");
    is_seed[s] = 1;
  }

  AggregationMap map;
  map.num_fine = n;
  map.seed_of.assign(n, 0);
  std::vector<NodeId> ties;
  for (NodeId v = 0; v < n; ++v) {
    if (is_seed[v]) {
      map.seed_of[v] = v;
      continue;
    }
    double best = 0.0;
    ties.clear();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!is_seed[nb.node]) continue;
      if (ties.empty() || nb.weight > best) {
        best = nb.weight;
        ties.assign(1, nb.node);
      } else if (nb.weight == best) {
        ties.push_back(nb.node);
      }
    }
    map.seed_of[v] = ties.empty() ? v : (ties.size() == 1 ? ties.front() : rng.pick(ties));
  }
  // promoted nodes are their own seeds
  for (NodeId v = 0; v < n; ++v)
    if (map.seed_of[v] == v) map.seeds.push_back(v);

  std::vector<NodeId> coarse_id(n, 0);
  for (NodeId c = 0; c < map.seeds.size(); ++c) coarse_id[map.seeds[c]] = c;
  map.coarse_of.resize(n);
  map.members.assign(map.seeds.size(), {});
  map.fine_degree_seq.assign(map.seeds.size(), {});
  for (NodeId v = 0; v < n; ++v) {
    const NodeId c = coarse_id[map.seed_of[v]];
    map.coarse_of[v] = c;
    map.members[c].push_back(v);
    map.fine_degree_seq[c].push_back(g.degree(v));
  }
  for (auto& seq : map.fine_degree_seq) std::sort(seq.begin(), seq.end());

  for (const Edge& e : g.edges()) {
    const NodeId a = map.coarse_of[e.u];
    const NodeId b = map.coarse_of[e.v];
    if (a == b) {
      map.trapped_edges.push_back(e);
    } else {
      map.inter_edge_support[make_pair_key(a, b)].push_back(e);
    }
  }
  return map;
}

/// Coarse graph of `map`: one node per aggregate with the summed member
/// volume, and one edge per adjacent aggregate pair with the summed weight of
/// the fine edges between them. Intra-aggregate weight is not represented.
inline Graph coarsen_graph(const Graph& g, const AggregationMap& map) {
  if (map.num_fine != g.num_nodes()) throw StructuralError("coarsen_graph: map built on another graph");
  Graph coarse;
  for (const auto& agg : map.members) {
    double vol = 0.0;
    for (NodeId v : agg) vol += g.volume(v);
    coarse.add_node(vol);
  }
  for (const auto& [key, support] : map.inter_edge_support) {
    double w = 0.0;
    for (const Edge& e : support) w += e.weight;
    coarse.add_edge(key.first, key.second, w);
  }
  return coarse;
}

/// True when `g`, sitting at hierarchy index `level`, must be the coarsest
/// level: too dense, too small, or no rate entry left for a coarser level.
inline bool should_terminate(const Graph& g, std::size_t level, const GeneratorConfig& config) {
  return density(g) > config.max_density || g.num_nodes() <= config.min_coarse_nodes ||
         level + 1 >= config.depth();
}

}  // namespace mpng

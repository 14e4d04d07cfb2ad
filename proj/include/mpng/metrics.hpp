#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "mpng/graph.hpp"
#include "mpng/rng.hpp"

namespace mpng {

/// Structural summary of a graph. Distance-based fields are exact unless
/// `distances_sampled` is set, in which case they come from a seeded sample
/// of BFS sources.
struct MetricsReport {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t num_components = 0;
  double avg_degree = 0.0;
  double avg_clustering = 0.0;
  double degree_assortativity = 0.0;
  double harmonic_mean_distance = 0.0;
  double avg_shortest_path = 0.0;
  double mean_eccentricity = 0.0;
  double modularity = 0.0;
  double avg_betweenness = 0.0;
  double max_pagerank = 0.0;
  bool distances_sampled = false;
};

/// Field names and values of a report, in the fixed column order.
inline std::vector<std::pair<std::string, double>> metric_fields(const MetricsReport& r) {
  return {
      {"num_nodes", static_cast<double>(r.num_nodes)},
      {"num_edges", static_cast<double>(r.num_edges)},
      {"num_components", static_cast<double>(r.num_components)},
      {"avg_degree", r.avg_degree},
      {"avg_clustering", r.avg_clustering},
      {"degree_assortativity", r.degree_assortativity},
      {"harmonic_mean_distance", r.harmonic_mean_distance},
      {"avg_shortest_path", r.avg_shortest_path},
      {"mean_eccentricity", r.mean_eccentricity},
      {"modularity", r.modularity},
      {"avg_betweenness", r.avg_betweenness},
      {"max_pagerank", r.max_pagerank},
  };
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
inline double average_clustering(const Graph& g) {
  if (g.empty()) return 0.0;
  std::vector<char> mark(g.num_nodes(), 0);
  double sum = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nbrs = g.neighbors(v);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    for (const Neighbor& a : nbrs) mark[a.node] = 1;
    std::size_t links = 0;
    for (const Neighbor& a : nbrs)
      for (const Neighbor& b : g.neighbors(a.node))
        if (mark[b.node]) ++links;
    for (const Neighbor& a : nbrs) mark[a.node] = 0;
    sum += static_cast<double>(links) / static_cast<double>(k * (k - 1));
  }
  return sum / static_cast<double>(g.num_nodes());
}

/// Pearson correlation of the degrees at either end of an edge. Graphs where
/// that is undefined (no edges, or all edge ends of equal degree) report 0.
inline double degree_assortativity(const Graph& g) {
  double sx = 0.0, sxx = 0.0, sxy = 0.0, count = 0.0;
  for (auto [u, v] : g.edge_pairs()) {
    const double a = static_cast<double>(g.degree(u));
    const double b = static_cast<double>(g.degree(v));
    sx += a + b;
    sxx += a * a + b * b;
    sxy += 2.0 * a * b;
    count += 2.0;
  }
  if (count == 0.0) return 0.0;
  const double mean = sx / count;
  const double var = sxx / count - mean * mean;
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return 0.0;
  return (sxy / count - mean * mean) / var;
}

/// PageRank by power iteration on the unweighted graph; dangling nodes spread
/// their rank uniformly. Stops once the L1 change drops below `tol`.
inline std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10,
                                    std::size_t max_iter = 1000, std::size_t* iterations = nullptr) {
  const std::size_t n = g.num_nodes();
  std::vector<double> rank(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  if (n == 0) return rank;
  std::vector<double> next(n);
  std::size_t it = 0;
  while (it < max_iter) {
    ++it;
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v)
      if (g.degree(v) == 0) dangling += rank[v];
    const double base = (1.0 - damping + damping * dangling) / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t k = g.degree(v);
      if (k == 0) continue;
      const double share = damping * rank[v] / static_cast<double>(k);
      for (const Neighbor& nb : g.neighbors(v)) next[nb.node] += share;
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < tol) break;
  }
  if (iterations) *iterations = it;
  return rank;
}

/// Newman modularity of a partition (community label per node).
inline double modularity(const Graph& g, const std::vector<std::size_t>& community) {
  const double two_m = 2.0 * g.total_weight();
  if (two_m == 0.0) return 0.0;
  std::map<std::size_t, double> internal;
  std::map<std::size_t, double> degree;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (const Neighbor& nb : g.neighbors(v)) {
      degree[community[v]] += nb.weight;
      if (community[v] == community[nb.node]) internal[community[v]] += nb.weight;
    }
  }
  double q = 0.0;
  for (const auto& [c, d] : degree) {
    const double in = internal.contains(c) ? internal[c] : 0.0;
    q += in / two_m - (d / two_m) * (d / two_m);
  }
  return q;
}

/// Greedy agglomerative modularity maximization (Clauset-Newman-Moore).
/// Repeatedly merges the adjacent community pair with the largest gain while
/// the gain is positive. Equal gains are ordered by a seeded hash of the pair.
inline std::vector<std::size_t> greedy_modularity_communities(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = v;
  const double two_m = 2.0 * g.total_weight();
  if (two_m == 0.0) return label;

  std::vector<std::map<std::size_t, double>> link(n);  // community -> neighbor -> weight
  std::vector<double> share(n, 0.0);                  // fraction of edge ends
  for (NodeId v = 0; v < n; ++v) {
    for (const Neighbor& nb : g.neighbors(v)) link[v][nb.node] += nb.weight;
    share[v] = g.weighted_degree(v) / two_m;
  }
  std::vector<std::size_t> version(n, 0);
  std::vector<char> alive(n, 1);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {v};

  struct Candidate {
    double gain;
    std::uint64_t key;
    std::size_t a, b, va, vb;
    bool operator<(const Candidate& o) const {
      return std::tie(gain, o.key) < std::tie(o.gain, key);
    }
  };
  std::priority_queue<Candidate> heap;
  auto push = [&](std::size_t a, std::size_t b) {
    const double gain = 2.0 * (link[a][b] / two_m - share[a] * share[b]);
    const auto [lo, hi] = std::minmax(a, b);
    const std::uint64_t key = mix64(seed ^ mix64((static_cast<std::uint64_t>(lo) << 32) | hi));
    heap.push({gain, key, a, b, version[a], version[b]});
  };
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& [b, w] : link[a])
      if (a < b) push(a, b);

  while (!heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    if (!alive[top.a] || !alive[top.b] || version[top.a] != top.va || version[top.b] != top.vb)
      continue;
    if (top.gain <= 0.0) break;
    // keep the larger community
    std::size_t keep = top.a, gone = top.b;
    if (members[gone].size() > members[keep].size() ||
        (members[gone].size() == members[keep].size() && gone < keep))
      std::swap(keep, gone);
    for (const auto& [c, w] : link[gone]) {
      if (c == keep) continue;
      link[keep][c] += w;
      link[c][keep] += w;
      link[c].erase(gone);
    }
    link[keep].erase(gone);
    link[gone].clear();
    share[keep] += share[gone];
    members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
    members[gone].clear();
    alive[gone] = 0;
    ++version[keep];
    for (const auto& [c, w] : link[keep]) push(keep, c);
  }
  // relabel densely by smallest member
  std::vector<std::size_t> result(n);
  std::size_t next = 0;
  std::vector<std::size_t> dense(n, SIZE_MAX);
  std::vector<std::size_t> owner(n);
  for (std::size_t c = 0; c < n; ++c)
    if (alive[c])
      for (std::size_t v : members[c]) owner[v] = c;
  for (std::size_t v = 0; v < n; ++v) {
    if (dense[owner[v]] == SIZE_MAX) dense[owner[v]] = next++;
    result[v] = dense[owner[v]];
  }
  return result;
}

namespace detail {

struct DistanceStats {
  double inverse_distance_sum = 0.0;
  double pairs = 0.0;  ///< ordered (source, target) pairs covered
  double lcc_distance_sum = 0.0;
  double lcc_pairs = 0.0;
  double eccentricity_sum = 0.0;
  double sources = 0.0;
  std::vector<double> dependency;  ///< summed Brandes dependencies per node
};

/// One BFS per source: distances for the path statistics plus Brandes
/// dependency accumulation for betweenness.
inline DistanceStats distance_pass(const Graph& g, const std::vector<NodeId>& sources,
                                   const std::vector<std::uint32_t>& component,
                                   std::uint32_t largest) {
  const std::size_t n = g.num_nodes();
  DistanceStats st;
  st.dependency.assign(n, 0.0);
  std::vector<int> dist(n, -1);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s : sources) {
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (const Neighbor& nb : g.neighbors(v)) {
        const NodeId w = nb.node;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    int ecc = 0;
    for (NodeId t : order) {
      if (t == s) continue;
      const double d = dist[t];
      st.inverse_distance_sum += 1.0 / d;
      if (component[s] == largest) st.lcc_distance_sum += d;
      ecc = std::max(ecc, dist[t]);
    }
    st.pairs += static_cast<double>(n - 1);
    if (component[s] == largest) st.lcc_pairs += static_cast<double>(order.size() - 1);
    st.eccentricity_sum += ecc;
    st.sources += 1.0;
    for (std::size_t i = order.size(); i-- > 0;) {
      const NodeId w = order[i];
      for (const Neighbor& nb : g.neighbors(w)) {
        const NodeId v = nb.node;
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) st.dependency[w] += delta[w];
    }
    for (NodeId t : order) {
      dist[t] = -1;
      sigma[t] = 0.0;
      delta[t] = 0.0;
    }
  }
  return st;
}

}  // namespace detail

/// Unnormalized betweenness per node, exact (every pair counted once).
inline std::vector<double> betweenness(const Graph& g) {
  std::vector<NodeId> sources(g.num_nodes());
  for (NodeId v = 0; v < sources.size(); ++v) sources[v] = v;
  const auto comp = component_labels(g);
  auto st = detail::distance_pass(g, sources, comp, 0);
  for (double& d : st.dependency) d /= 2.0;
  return st.dependency;
}

/// Computes every report field. Distance-based metrics use all nodes as BFS
/// sources when n <= sample_cap, otherwise sample_cap seeded random sources.
inline MetricsReport compute_metrics(const Graph& g, std::size_t sample_cap, SeededRng& rng) {
  MetricsReport r;
  const std::size_t n = g.num_nodes();
  r.num_nodes = n;
  r.num_edges = g.num_edges();
  const auto comps = connected_components(g);
  r.num_components = comps.size();
  if (n == 0) return r;
  r.avg_degree = 2.0 * static_cast<double>(r.num_edges) / static_cast<double>(n);
  r.avg_clustering = average_clustering(g);
  r.degree_assortativity = degree_assortativity(g);

  const auto component = component_labels(g);
  std::uint32_t largest = 0;
  for (std::uint32_t c = 1; c < comps.size(); ++c)
    if (comps[c].size() > comps[largest].size()) largest = c;

  std::vector<NodeId> sources(n);
  for (NodeId v = 0; v < n; ++v) sources[v] = v;
  if (n > sample_cap && sample_cap > 0) {
    for (std::size_t i = 0; i < sample_cap; ++i) std::swap(sources[i], sources[i + rng.index(n - i)]);
    sources.resize(sample_cap);
    std::sort(sources.begin(), sources.end());
    r.distances_sampled = true;
  }
  const auto st = detail::distance_pass(g, sources, component, largest);
  r.harmonic_mean_distance = st.inverse_distance_sum > 0.0
                                 ? st.pairs / st.inverse_distance_sum
                                 : std::numeric_limits<double>::infinity();
  r.avg_shortest_path = st.lcc_pairs > 0.0 ? st.lcc_distance_sum / st.lcc_pairs : 0.0;
  r.mean_eccentricity = st.eccentricity_sum / st.sources;
  if (n > 2) {
    const double scale = static_cast<double>(n) / st.sources /
                         (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    double sum = 0.0;
    for (double d : st.dependency) sum += d;
    r.avg_betweenness = sum * scale / static_cast<double>(n);
  }
  r.modularity = modularity(g, greedy_modularity_communities(g, rng.next()));
  const auto pr = pagerank(g);
  r.max_pagerank = *std::max_element(pr.begin(), pr.end());
  return r;
}

/// One compared metric: replica / original, or replica - original when the
/// original is exactly zero.
struct NormalizedValue {
  std::string name;
  double value = 0.0;
  bool absolute = false;
};

struct NormalizedComparison {
  std::vector<NormalizedValue> values;

  const NormalizedValue& at(const std::string& name) const {
    for (const auto& v : values)
      if (v.name == name) return v;
    throw PreconditionError("unknown metric " + name);
  }
};

inline NormalizedComparison normalize(const MetricsReport& replica, const MetricsReport& original) {
  NormalizedComparison out;
  const auto rep = metric_fields(replica);
  const auto orig = metric_fields(original);
  for (std::size_t i = 0; i < rep.size(); ++i) {
    NormalizedValue v;
    v.name = rep[i].first;
    if (orig[i].second == 0.0) {
      v.absolute = true;
      v.value = rep[i].second - orig[i].second;
    } else {
      v.value = rep[i].second / orig[i].second;
    }
    out.values.push_back(std::move(v));
  }
  return out;
}

}  // namespace mpng

#pragma once

// Graph families used across the unit and acceptance suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "mpng/graph.hpp"
#include "mpng/planarity.hpp"
#include "mpng/rng.hpp"

namespace mpng::fixtures {

inline Graph path(std::size_t n) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g = path(n);
  if (n > 2) g.add_edge(static_cast<NodeId>(n - 1), 0);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (NodeId x = 0; x < a; ++x)
    for (NodeId y = 0; y < b; ++y) g.add_edge(x, static_cast<NodeId>(a + y));
  return g;
}

/// Star with center 0 and `leaves` leaves.
inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph grid(std::size_t rows, std::size_t cols) {
  Graph g(rows * cols);
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  return g;
}

/// Random planar triangulation (3n-6 edges): repeated vertex insertion into a
/// random face, followed by random edge flips.
inline Graph random_triangulation(std::size_t n, SeededRng& rng) {
  Graph g(std::max<std::size_t>(n, 3));
  if (n < 3) {
    Graph small(n);
    if (n == 2) small.add_edge(0, 1);
    return small;
  }
  using Face = std::array<NodeId, 3>;
  std::vector<Face> faces{{0, 1, 2}, {0, 2, 1}};
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  for (NodeId v = 3; v < n; ++v) {
    const std::size_t f = rng.index(faces.size());
    const Face t = faces[f];
    faces[f] = {t[0], t[1], v};
    faces.push_back({t[1], t[2], v});
    faces.push_back({t[2], t[0], v});
    for (NodeId x : t) g.add_edge(x, v);
  }
  // Flips. Faces are consistently oriented, so each directed edge belongs to
  // exactly one face: (a,b,c) and (b,a,d) share {a,b}.
  std::map<std::pair<NodeId, NodeId>, std::size_t> owner;
  auto claim = [&](std::size_t f) {
    for (int i = 0; i < 3; ++i) owner[{faces[f][i], faces[f][(i + 1) % 3]}] = f;
  };
  for (std::size_t f = 0; f < faces.size(); ++f) claim(f);
  for (std::size_t round = 0; round < 2 * n; ++round) {
    const std::size_t f = rng.index(faces.size());
    const int i = static_cast<int>(rng.index(3));
    const NodeId a = faces[f][i], b = faces[f][(i + 1) % 3], c = faces[f][(i + 2) % 3];
    const std::size_t h = owner.at({b, a});
    NodeId d = faces[h][0];
    for (NodeId x : faces[h])
      if (x != a && x != b) d = x;
    if (c == d || g.has_edge(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3) continue;
    owner.erase({a, b});
    owner.erase({b, a});
    g.remove_edge(a, b);
    g.add_edge(c, d);
    faces[f] = {a, d, c};
    faces[h] = {d, b, c};
    claim(f);
    claim(h);
  }
  return g;
}

/// Random planar graph: a triangulation with each edge kept with probability `keep`.
inline Graph random_planar(std::size_t n, double keep, SeededRng& rng) {
  const Graph t = random_triangulation(n, rng);
  Graph g(n);
  for (auto [u, v] : t.edge_pairs())
    if (rng.uniform() < keep) g.add_edge(u, v);
  return g;
}

/// Erdos-Renyi G(n, p).
inline Graph random_gnp(std::size_t n, double p, SeededRng& rng) {
  Graph g(n);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (rng.uniform() < p) g.add_edge(a, b);
  return g;
}

/// Road-like network: random points in the unit square, connected by their
/// Euclidean minimum spanning tree, each also joined to its two nearest
/// neighbors and, with probability 1/2, its third, then reduced to a maximal
/// planar subgraph. The result is connected.
inline Graph road_like(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  auto dist2 = [&](NodeId a, NodeId b) {
    const double dx = pts[a].first - pts[b].first, dy = pts[a].second - pts[b].second;
    return dx * dx + dy * dy;
  };
  Graph g(n);
  // Prim's algorithm on the complete Euclidean graph.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<NodeId> via(n, 0);
  std::vector<char> in_tree(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId next = 0;
    double next_d = std::numeric_limits<double>::infinity();
    for (NodeId w = 0; w < n; ++w)
      if (!in_tree[w] && (step == 0 || best[w] < next_d)) {
        next = w;
        next_d = best[w];
        if (step == 0) break;
      }
    in_tree[next] = 1;
    if (step > 0) g.add_edge(via[next], next);
    for (NodeId w = 0; w < n; ++w)
      if (!in_tree[w] && dist2(next, w) < best[w]) {
        best[w] = dist2(next, w);
        via[w] = next;
      }
  }
  std::vector<std::pair<double, NodeId>> near;
  for (NodeId v = 0; v < n; ++v) {
    near.clear();
    for (NodeId w = 0; w < n; ++w) {
      if (w != v) near.emplace_back(dist2(v, w), w);
    }
    const std::size_t k = std::min<std::size_t>(near.size(), rng.uniform() < 0.5 ? 3 : 2);
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k), near.end());
    for (std::size_t i = 0; i < k; ++i)
      if (!g.has_edge(v, near[i].second)) g.add_edge(v, near[i].second);
  }
  return maximal_planar_subgraph(g, rng);
}

}  // namespace mpng::fixtures

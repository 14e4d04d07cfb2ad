#include <gtest/gtest.h>

#include <numeric>

#include "mpng/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace mpng {
namespace {

MetricsReport metrics_of(const Graph& g) {
  SeededRng rng(1);
  return compute_metrics(g, 5000, rng);
}

TEST(Metrics, Triangle) {
  const auto r = metrics_of(fixtures::complete(3));
  EXPECT_DOUBLE_EQ(r.avg_clustering, 1.0);
  EXPECT_DOUBLE_EQ(r.avg_degree, 2.0);
  EXPECT_EQ(r.num_components, 1u);
  EXPECT_DOUBLE_EQ(r.harmonic_mean_distance, 1.0);
  EXPECT_FALSE(r.distances_sampled);
}

TEST(Metrics, PathP4) {
  const auto r = metrics_of(fixtures::path(4));
  EXPECT_DOUBLE_EQ(r.avg_clustering, 0.0);
  EXPECT_DOUBLE_EQ(r.avg_degree, 1.5);
  // distances 1,1,1,2,2,3 per unordered pair
  EXPECT_DOUBLE_EQ(r.avg_shortest_path, 10.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.harmonic_mean_distance, 6.0 / (3.0 + 1.0 + 1.0 / 3.0));
  EXPECT_DOUBLE_EQ(r.mean_eccentricity, 2.5);
}

TEST(Metrics, StarIsDisassortative) {
  EXPECT_DOUBLE_EQ(metrics_of(fixtures::star(5)).degree_assortativity, -1.0);
}

TEST(Metrics, CycleBetweenness) {
  const auto bc = betweenness(fixtures::cycle(4));
  for (double b : bc) EXPECT_DOUBLE_EQ(b, 0.5);
  // 0.5 per node normalized by (n-1)(n-2)/2 = 3
  EXPECT_DOUBLE_EQ(metrics_of(fixtures::cycle(4)).avg_betweenness, 0.5 / 3.0);
}

TEST(Metrics, EmptyAndEdgeless) {
  const auto empty = metrics_of(Graph());
  EXPECT_EQ(empty.num_nodes, 0u);
  const auto isolated = metrics_of(Graph(3));
  EXPECT_EQ(isolated.num_components, 3u);
  EXPECT_DOUBLE_EQ(isolated.degree_assortativity, 0.0);
  EXPECT_TRUE(std::isinf(isolated.harmonic_mean_distance));
  EXPECT_DOUBLE_EQ(isolated.max_pagerank, 1.0 / 3.0);
}

TEST(MetricsProperty, AgreeWithBruteForce) {
  SeededRng gen(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + gen.index(48);
    const Graph g = trial % 3 == 0 ? fixtures::random_gnp(n, 0.12, gen)
                                   : fixtures::random_planar(n, 0.3 + 0.6 * gen.uniform(), gen);
    const auto r = metrics_of(g);
    EXPECT_NEAR(r.avg_clustering, oracle::clustering(g), 1e-12);
    EXPECT_NEAR(r.degree_assortativity, oracle::assortativity(g), 1e-9);
    EXPECT_EQ(r.num_components, connected_components(g).size());
    EXPECT_DOUBLE_EQ(r.avg_degree, 2.0 * g.num_edges() / static_cast<double>(n));

    const auto d = oracle::all_pairs_distances(g);
    double inv = 0.0, ecc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      double e = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t || std::isinf(d[s][t])) continue;
        inv += 1.0 / d[s][t];
        e = std::max(e, d[s][t]);
      }
      ecc += e;
    }
    if (inv > 0) {
      EXPECT_NEAR(r.harmonic_mean_distance, n * (n - 1.0) / inv, 1e-9);
    }
    EXPECT_NEAR(r.mean_eccentricity, ecc / n, 1e-12);

    const auto comps = connected_components(g);
    const auto largest = *std::max_element(comps.begin(), comps.end(),
                                           [](const auto& a, const auto& b) { return a.size() < b.size(); });
    double lsum = 0.0, lpairs = 0.0;
    for (NodeId s : largest)
      for (NodeId t : largest)
        if (s != t) {
          lsum += d[s][t];
          lpairs += 1.0;
        }
    EXPECT_NEAR(r.avg_shortest_path, lpairs > 0 ? lsum / lpairs : 0.0, 1e-9);

    const auto bc = betweenness(g);
    const auto expected = oracle::betweenness(g);
    for (std::size_t v = 0; v < n; ++v) EXPECT_NEAR(bc[v], expected[v], 1e-9);
    const double total = std::accumulate(expected.begin(), expected.end(), 0.0);
    if (n > 2) {
      EXPECT_NEAR(r.avg_betweenness, total / ((n - 1.0) * (n - 2.0) / 2.0) / n, 1e-12);
    }
  }
}

TEST(MetricsProperty, BetweennessCountsIntermediatePairs) {
  // on a tree every shortest path is unique: total betweenness is the sum over
  // pairs of (distance - 1)
  SeededRng gen(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen.index(30);
    Graph tree(n);
    for (NodeId v = 1; v < n; ++v) tree.add_edge(v, static_cast<NodeId>(gen.index(v)));
    const auto d = oracle::all_pairs_distances(tree);
    double expected = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t) expected += d[s][t] - 1.0;
    const auto bc = betweenness(tree);
    EXPECT_NEAR(std::accumulate(bc.begin(), bc.end(), 0.0), expected, 1e-9);
  }
}

TEST(PageRank, SumsToOneAndConverges) {
  SeededRng gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = fixtures::random_planar(5 + gen.index(200), 0.5, gen);
    std::size_t iterations = 0;
    const auto pr = pagerank(g, 0.85, 1e-10, 1000, &iterations);
    EXPECT_NEAR(std::accumulate(pr.begin(), pr.end(), 0.0), 1.0, 1e-9);
    EXPECT_LE(iterations, 200u);
  }
  const auto sym = pagerank(fixtures::cycle(7));
  for (double p : sym) EXPECT_NEAR(p, 1.0 / 7.0, 1e-12);
}

TEST(Modularity, DeterministicAndMatchesFormula) {
  SeededRng gen(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = fixtures::random_planar(20 + gen.index(100), 0.6, gen);
    const auto part = greedy_modularity_communities(g, 7);
    EXPECT_EQ(part, greedy_modularity_communities(g, 7));
    // direct formula over node pairs
    const double two_m = 2.0 * g.total_weight();
    double q = 0.0;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (part[u] != part[v]) continue;
        const double a = g.weight(u, v).value_or(0.0);
        q += a - weighted_degree(g, u) * weighted_degree(g, v) / two_m;
      }
    q /= two_m;
    EXPECT_NEAR(modularity(g, part), q, 1e-9);
    EXPECT_GE(modularity(g, part), -0.5);
    EXPECT_LE(modularity(g, part), 1.0);
  }
}

TEST(Modularity, TwoTrianglesJoinedByAnEdge) {
  const Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const auto part = greedy_modularity_communities(g, 1);
  EXPECT_EQ(part[0], part[1]);
  EXPECT_EQ(part[1], part[2]);
  EXPECT_EQ(part[3], part[4]);
  EXPECT_NE(part[0], part[3]);
  EXPECT_NEAR(modularity(g, part), 5.0 / 14.0, 1e-12);
}

TEST(Normalize, Examples) {
  const auto base = metrics_of(fixtures::path(6));
  for (const auto& v : normalize(base, base).values) {
    if (v.absolute) {
      EXPECT_EQ(v.value, 0.0) << v.name;
    } else {
      EXPECT_DOUBLE_EQ(v.value, 1.0) << v.name;
    }
  }
  MetricsReport doubled = base;
  doubled.num_edges *= 2;
  EXPECT_DOUBLE_EQ(normalize(doubled, base).at("num_edges").value, 2.0);
  MetricsReport clustered = base;
  clustered.avg_clustering = 0.1;
  const auto c = normalize(clustered, base).at("avg_clustering");
  EXPECT_TRUE(c.absolute);
  EXPECT_DOUBLE_EQ(c.value, 0.1);
}

TEST(Metrics, SampledAboveCap) {
  SeededRng gen(35);
  const Graph g = fixtures::random_planar(300, 0.5, gen);
  SeededRng a(3), b(3);
  const auto ra = compute_metrics(g, 100, a);
  const auto rb = compute_metrics(g, 100, b);
  EXPECT_TRUE(ra.distances_sampled);
  EXPECT_EQ(ra.harmonic_mean_distance, rb.harmonic_mean_distance);
  const auto exact = metrics_of(g);
  EXPECT_NEAR(ra.harmonic_mean_distance / exact.harmonic_mean_distance, 1.0, 0.1);
}

}  // namespace
}  // namespace mpng

#include <gtest/gtest.h>

#include "mpng/profile.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace mpng {
namespace {

std::map<int, double> as_map(const SpathHistogram& h) {
  std::map<int, double> out = h.by_distance;
  if (h.unreachable > 0.0) out[-1] = h.unreachable;
  return out;
}

TEST(SecondShortestPath, Examples) {
  EXPECT_EQ(second_shortest_path(fixtures::complete(3), 0, 1), 2);
  EXPECT_EQ(second_shortest_path(fixtures::cycle(5), 3, 4), 4);
  EXPECT_EQ(second_shortest_path(fixtures::path(2), 0, 1), std::nullopt);
  EXPECT_EQ(second_shortest_path(fixtures::cycle(30), 0, 1, 20), std::nullopt);
  EXPECT_EQ(second_shortest_path(fixtures::cycle(21), 0, 1, 20), 20);
}

TEST(SecondShortestPath, RequiresEdge) {
  EXPECT_THROW(second_shortest_path(fixtures::path(3), 0, 2), PreconditionError);
}

TEST(SecondShortestPathProperty, AtLeastTwoAndTwoIffTriangle) {
  SeededRng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = fixtures::random_planar(25, 0.6, rng);
    const auto a = oracle::adjacency_matrix(g);
    for (auto [u, v] : g.edge_pairs()) {
      const auto d = second_shortest_path(g, u, v);
      if (!d) continue;
      EXPECT_GE(*d, 2);
      bool triangle = false;
      for (std::size_t w = 0; w < g.num_nodes(); ++w) triangle |= a[u][w] && a[v][w];
      EXPECT_EQ(*d == 2, triangle);
    }
  }
}

TEST(EstimateSpath, Examples) {
  SeededRng rng(1);
  auto tri = estimate_spath_distribution(fixtures::complete(3), 3, rng);
  EXPECT_EQ(as_map(tri), (std::map<int, double>{{2, 1.0}}));
  auto c6 = estimate_spath_distribution(fixtures::cycle(6), 100, rng);
  EXPECT_EQ(as_map(c6), (std::map<int, double>{{5, 1.0}}));
  EXPECT_EQ(c6.sample_size, 6u);
  const Graph bowtie = make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  EXPECT_EQ(as_map(estimate_spath_distribution(bowtie, 6, rng)), (std::map<int, double>{{2, 1.0}}));
  EXPECT_TRUE(estimate_spath_distribution(Graph(4), 10, rng).empty());
}

TEST(EstimateSpathProperty, FullSampleEqualsExhaustive) {
  SeededRng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng.index(27);
    const Graph g = trial % 2 ? fixtures::random_planar(n, 0.5, rng) : fixtures::random_gnp(n, 0.15, rng);
    const auto h = estimate_spath_distribution(g, g.num_edges(), rng);
    if (g.num_edges() == 0) continue;
    EXPECT_NEAR(h.total(), 1.0, 1e-9);
    const auto expected = oracle::exhaustive_spath(g);
    ASSERT_EQ(as_map(h).size(), expected.size());
    for (const auto& [d, p] : expected) EXPECT_DOUBLE_EQ(as_map(h)[d], p);
  }
}

TEST(SampleNodeAtDistance, Examples) {
  SeededRng rng(3);
  EXPECT_EQ(sample_node_at_distance(fixtures::cycle(6), 0, 3, rng), 3u);
  std::map<NodeId, int> counts;
  for (int i = 0; i < 3000; ++i) ++counts[*sample_node_at_distance(fixtures::star(3), 1, 2, rng)];
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_NEAR(counts[2], 1500, 150);
  EXPECT_NEAR(counts[3], 1500, 150);
  EXPECT_EQ(sample_node_at_distance(fixtures::complete(4), 0, 2, rng), std::nullopt);
}

TEST(SampleNodeAtDistance, FallsBackToNearestRing) {
  SeededRng rng(4);
  // path 0-1-2-3: from 0 only rings 2 and 3 exist
  EXPECT_EQ(sample_node_at_distance(fixtures::path(4), 0, 7, rng), 3u);
  // rings 2 and 4 equally far from 3: prefer the smaller
  const Graph p5 = fixtures::path(5);
  Graph g = p5;
  g.remove_edge(2, 3);
  g.add_edge(1, 3);  // 0-1, 1-2, 1-3, 3-4: ring 2 = {2,3}, ring 3 = {4}
  const auto v = sample_node_at_distance(g, 0, 5, rng);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, 4u);
}

TEST(SampleNodeAtDistanceProperty, NeverAdjacent) {
  SeededRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = fixtures::random_planar(30, 0.5, rng);
    const NodeId u = static_cast<NodeId>(rng.index(30));
    const auto v = sample_node_at_distance(g, u, 2 + static_cast<int>(rng.index(6)), rng);
    if (!v) continue;
    EXPECT_NE(*v, u);
    EXPECT_FALSE(g.has_edge(u, *v));
    EXPECT_GE(oracle::all_pairs_distances(g)[u][*v], 2.0);
  }
}

TEST(LoopClosure, Examples) {
  SeededRng rng(6);
  for (const auto& [len, p] : estimate_loop_closure(fixtures::path(10), 6, 200, rng))
    EXPECT_EQ(p, 0.0) << len;
  const auto tri = estimate_loop_closure(fixtures::complete(3), 4, 200, rng);
  EXPECT_EQ(tri.at(3), 1.0);
  EXPECT_EQ(tri.at(4), 0.0);
  EXPECT_EQ(estimate_loop_closure(fixtures::cycle(4), 4, 200, rng).at(3), 0.0);
  EXPECT_EQ(estimate_loop_closure(fixtures::cycle(4), 4, 200, rng).at(4), 1.0);
  for (const auto& [len, p] : estimate_loop_closure(fixtures::star(4), 5, 100, rng)) EXPECT_EQ(p, 0.0);
  EXPECT_TRUE(estimate_loop_closure(fixtures::path(2), 5, 100, rng).empty());
  EXPECT_THROW(estimate_loop_closure(fixtures::cycle(4), 2, 10, rng), PreconditionError);
}

}  // namespace
}  // namespace mpng

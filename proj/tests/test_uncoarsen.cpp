#include <gtest/gtest.h>

#include "mpng/generate.hpp"
#include "mpng/uncoarsen.hpp"
#include "support/fixtures.hpp"

namespace mpng {
namespace {

struct Level {
  Graph fine;
  AggregationMap map;
  Graph coarse;
};

Level aggregate(const Graph& fine, std::vector<NodeId> seeds, std::uint64_t seed = 1) {
  SeededRng rng(seed);
  AggregationMap map = build_aggregation(fine, seeds, rng);
  Graph coarse = coarsen_graph(fine, map);
  return {fine, std::move(map), std::move(coarse)};
}

PropertyProfile profile_of(const Graph& g, std::uint64_t seed = 2) {
  SeededRng rng(seed);
  GeneratorConfig cfg;
  return measure_profile(g, cfg, 0, rng);
}

bool is_subgraph(const Graph& sub, const Graph& super) {
  if (sub.num_nodes() > super.num_nodes()) return false;
  for (auto [u, v] : sub.edge_pairs())
    if (!super.has_edge(u, v)) return false;
  return true;
}

TEST(InterpolateUnedited, EmptyLedgerIsIdentity) {
  const Level l = aggregate(fixtures::path(4), {1, 2});
  EXPECT_EQ(interpolate_unedited(l.coarse, {}, l.map, l.fine), l.fine);
}

TEST(InterpolateUnedited, DeletedCoarseEdgeDropsSupport) {
  const Level l = aggregate(fixtures::path(4), {1, 2});
  Graph edited = l.coarse;
  edited.remove_edge(0, 1);
  const Graph out = interpolate_unedited(edited, diff_ledger(l.coarse, edited), l.map, l.fine);
  EXPECT_EQ(out.num_nodes(), 4u);
  EXPECT_EQ(out.edge_pairs(), (std::vector<NodePair>{{0, 1}, {2, 3}}));
}

TEST(InterpolateUnedited, DeletedCoarseNodeDropsMembers) {
  // a-b-c-d with aggregates {a,b} and {c,d}; delete the first
  const Level l = aggregate(fixtures::path(4), {1, 2});
  EditLedger ledger;
  ledger.deleted_nodes.insert(0);
  ledger.deleted_edges.insert({0, 1});
  Graph edited(2);
  const Graph out = interpolate_unedited(edited, ledger, l.map, l.fine);
  EXPECT_EQ(out.num_nodes(), 2u);
  EXPECT_EQ(out.edge_pairs(), (std::vector<NodePair>{{0, 1}}));
}

TEST(InterpolateUnedited, InconsistentLedgerIsStructuralError) {
  const Level l = aggregate(fixtures::path(4), {1, 2});
  EditLedger ledger;
  ledger.deleted_edges.insert({0, 5});
  EXPECT_THROW(interpolate_unedited(l.coarse, ledger, l.map, l.fine), StructuralError);
  EditLedger adds_existing;
  adds_existing.added_edges.insert({0, 1});
  EXPECT_THROW(interpolate_unedited(l.coarse, adds_existing, l.map, l.fine), StructuralError);
  EXPECT_THROW(interpolate_unedited(l.coarse, {}, l.map, fixtures::path(5)), StructuralError);
}

TEST(InterpolateEdited, EmptyLedgerIsNoOp) {
  const Level l = aggregate(fixtures::grid(4, 4), {0, 3, 5, 10, 12, 15});
  SeededRng rng(3);
  const Graph partial = interpolate_unedited(l.coarse, {}, l.map, l.fine);
  EXPECT_EQ(interpolate_edited(l.coarse, partial, {}, l.map, profile_of(l.fine), rng, 10), partial);
}

TEST(InterpolateEdited, AddedEdgeBetweenSingletons) {
  const Level l = aggregate(fixtures::path(3), {0, 1, 2});
  ASSERT_EQ(l.coarse.num_nodes(), 3u);
  Graph edited = l.coarse;
  edited.add_edge(0, 2);
  const EditLedger ledger = diff_ledger(l.coarse, edited);
  const Graph partial = interpolate_unedited(edited, ledger, l.map, l.fine);
  SeededRng rng(4);
  InterpolationStats stats;
  const Graph out =
      interpolate_edited(edited, partial, ledger, l.map, profile_of(l.fine), rng, 10, &stats);
  EXPECT_EQ(out, fixtures::complete(3));
  EXPECT_EQ(stats.attempted_edges, 1u);
  EXPECT_EQ(stats.dropped_edges, 0u);
}

TEST(InterpolateEdited, EdgeCompletingK5IsDropped) {
  Graph fine = fixtures::complete(5);
  fine.remove_edge(0, 1);
  const Level l = aggregate(fine, {0, 1, 2, 3, 4});
  Graph edited = l.coarse;
  edited.add_edge(0, 1);
  const EditLedger ledger = diff_ledger(l.coarse, edited);
  const Graph partial = interpolate_unedited(edited, ledger, l.map, l.fine);
  SeededRng rng(5);
  InterpolationStats stats;
  const Graph out =
      interpolate_edited(edited, partial, ledger, l.map, profile_of(l.fine), rng, 10, &stats);
  EXPECT_EQ(out, fine);
  EXPECT_EQ(stats.dropped_edges, 1u);
  EXPECT_TRUE(is_planar(out).planar);
}

TEST(InterpolateEdited, SpawnedAggregateIsConnected) {
  const Level l = aggregate(fixtures::grid(5, 5), {0, 4, 12, 20, 24});
  Graph edited = l.coarse;
  const NodeId c = edited.add_node();
  edited.add_edge(c, 0);
  const EditLedger ledger = diff_ledger(l.coarse, edited);
  for (std::uint64_t s = 0; s < 20; ++s) {
    SeededRng rng(s);
    InterpolationStats stats;
    const Graph partial = interpolate_unedited(edited, ledger, l.map, l.fine);
    const Graph out =
        interpolate_edited(edited, partial, ledger, l.map, profile_of(l.fine), rng, 10, &stats);
    ASSERT_GE(stats.spawned_nodes, 1u);
    EXPECT_EQ(out.num_nodes(), l.fine.num_nodes() + stats.spawned_nodes);
    Graph spawned(stats.spawned_nodes);
    for (const Edge& e : out.edges())
      if (e.u >= l.fine.num_nodes() && e.v >= l.fine.num_nodes())
        spawned.add_edge(e.u - static_cast<NodeId>(l.fine.num_nodes()),
                         e.v - static_cast<NodeId>(l.fine.num_nodes()));
    EXPECT_EQ(connected_components(spawned).size(), 1u);
    EXPECT_TRUE(is_planar(out).planar);
  }
}

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, EveryLevelIsRestoredExactly) {
  SeededRng gen(300 + GetParam());
  const Graph g = GetParam() % 3 == 0   ? fixtures::grid(6 + GetParam() % 7, 9)
                  : GetParam() % 3 == 1 ? fixtures::random_triangulation(40 + 7 * GetParam(), gen)
                                        : fixtures::random_planar(60 + 5 * GetParam(), 0.5, gen);
  GeneratorConfig cfg;
  cfg.edge_edit_rates = cfg.edge_growth_rates = cfg.node_growth_rates = std::vector<double>(8, 0.0);
  cfg.seed = GetParam();
  const auto levels = build_hierarchy(g, cfg);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& map = *levels[i].map;
    EXPECT_EQ(interpolate_unedited(levels[i + 1].graph, {}, map, levels[i].graph), levels[i].graph)
        << "level " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Graphs, RoundTrip, ::testing::Range(0, 12));

class EditedProjection : public ::testing::TestWithParam<int> {};

TEST_P(EditedProjection, PlanarSubgraphAndNodeAccounting) {
  SeededRng gen(400 + GetParam());
  const Graph fine = fixtures::random_planar(80, 0.6, gen);
  SeededRng rng(GetParam());
  const auto seeds = select_seeds(fine, 0.5, rng);
  const AggregationMap map = build_aggregation(fine, seeds, rng);
  const Graph coarse = coarsen_graph(fine, map);

  // random coarse edits that keep the coarse graph planar
  Graph edited = coarse;
  for (auto [u, v] : coarse.edge_pairs())
    if (gen.uniform() < 0.2) edited.remove_edge(u, v);
  const std::size_t spawned_coarse = 1 + gen.index(3);
  for (std::size_t i = 0; i < spawned_coarse; ++i) edited.add_node();
  for (int i = 0; i < 30; ++i) {
    const NodeId a = static_cast<NodeId>(gen.index(edited.num_nodes()));
    const NodeId b = static_cast<NodeId>(gen.index(edited.num_nodes()));
    if (a != b && !edited.has_edge(a, b) && admits_edge(edited, a, b)) edited.add_edge(a, b);
  }
  const EditLedger ledger = diff_ledger(coarse, edited);

  const Graph partial = interpolate_unedited(edited, ledger, map, fine);
  EXPECT_TRUE(is_subgraph(partial, fine));
  EXPECT_EQ(partial.num_nodes(), fine.num_nodes());
  InterpolationStats stats;
  const Graph out = interpolate_edited(edited, partial, ledger, map, profile_of(fine), rng, 10, &stats);
  EXPECT_TRUE(is_planar(out).planar);
  EXPECT_EQ(out.num_nodes(), fine.num_nodes() + stats.spawned_nodes);
  EXPECT_TRUE(is_subgraph(partial, out));
  EXPECT_LE(stats.dropped_edges, stats.attempted_edges);
}

INSTANTIATE_TEST_SUITE_P(Seeds, EditedProjection, ::testing::Range(0, 25));

}  // namespace
}  // namespace mpng

#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "mpng/coarsen.hpp"
#include "mpng/config.hpp"
#include "mpng/edit.hpp"
#include "mpng/ledger.hpp"
#include "mpng/planarity.hpp"
#include "mpng/profile.hpp"
#include "mpng/rng.hpp"
#include "mpng/uncoarsen.hpp"

namespace mpng {

struct LevelReport {
  std::size_t level = 0;
  std::size_t nodes = 0;       ///< nodes of the stored hierarchy graph
  std::size_t edges = 0;
  std::size_t seeds = 0;       ///< seeds chosen by the connectivity rule
  std::size_t aggregates = 0;  ///< aggregates after promoting orphaned nodes
  std::size_t deletions = 0;
  std::size_t insertions_attempted = 0;
  std::size_t insertions_applied = 0;
  std::size_t insertions_dropped = 0;
  std::size_t nodes_added = 0;
  std::size_t interpolation_attempted = 0;
  std::size_t interpolation_dropped = 0;
  std::size_t spawned_nodes = 0;
};

struct RunReport {
  std::vector<LevelReport> levels;
  std::uint64_t seed = 0;
  /// Rate entries that addressed levels the hierarchy never reached.
  std::size_t ignored_rate_entries = 0;
  double wall_seconds = 0.0;

  std::size_t total_insertions_attempted() const {
    std::size_t s = 0;
    for (const auto& l : levels) s += l.insertions_attempted + l.interpolation_attempted;
    return s;
  }
  std::size_t total_dropped() const {
    std::size_t s = 0;
    for (const auto& l : levels) s += l.insertions_dropped + l.interpolation_dropped;
    return s;
  }
};

/// Coarsens `g0` until should_terminate fires or coarsening stops shrinking
/// the graph. Level i carries G_i, its profile Q_i and the map to level i+1.
inline std::vector<HierarchyLevel> build_hierarchy(const Graph& g0, const GeneratorConfig& config,
                                                   SeededRng& rng,
                                                   std::vector<std::size_t>* seed_counts = nullptr) {
  config.validate();
  if (!is_planar(g0).planar)
    throw DataError("input graph is not planar; run `planarize` first");
  std::vector<HierarchyLevel> levels;
  levels.push_back({g0, std::nullopt, {}, 0});
  for (;;) {
    HierarchyLevel& cur = levels.back();
    cur.profile = measure_profile(cur.graph, config, cur.level_index, rng);
    if (should_terminate(cur.graph, cur.level_index, config)) break;
    const auto seeds = select_seeds(cur.graph, config.alpha, rng);
    AggregationMap map = build_aggregation(cur.graph, seeds, rng);
    if (map.num_coarse() >= cur.graph.num_nodes()) break;
    Graph coarse = coarsen_graph(cur.graph, map);
    if (!is_planar(coarse).planar)
      throw StructuralError("coarsening produced a non-planar graph");
    if (seed_counts) seed_counts->push_back(seeds.size());
    cur.profile.aggregate_sizes = map.aggregate_sizes();
    cur.map = std::move(map);
    const std::size_t next = cur.level_index + 1;
    levels.push_back({std::move(coarse), std::nullopt, {}, next});
  }
  return levels;
}

inline std::vector<HierarchyLevel> build_hierarchy(const Graph& g0, const GeneratorConfig& config) {
  SeededRng rng(config.seed);
  return build_hierarchy(g0, config, rng);
}

namespace detail {

inline Graph edit_level(const Graph& g, const PropertyProfile& profile, const EditRates& rates,
                        const GeneratorConfig& config, SeededRng& rng, LevelReport& report) {
  if (rates.is_zero()) return g;
  EditOutcome edited = edit_graph(g, profile, {rates.edge_edit_rate, rates.edge_growth_rate, 0.0},
                                  rng, config.retries, config.spath_cap);
  report.deletions += edited.deletions;
  report.insertions_attempted += edited.attempted_insertions;
  report.insertions_dropped += edited.dropped_insertions;
  report.insertions_applied += edited.attempted_insertions - edited.dropped_insertions;
  if (rates.node_growth_rate == 0.0) return std::move(edited.graph);
  EditOutcome grown = rescale_graph(edited.graph, profile, rates.node_growth_rate, rng,
                                    config.retries, config.spath_cap);
  report.deletions += grown.deletions;
  report.insertions_attempted += grown.attempted_insertions;
  report.insertions_dropped += grown.dropped_insertions;
  report.insertions_applied += grown.attempted_insertions - grown.dropped_insertions;
  report.nodes_added += grown.added_nodes;
  return std::move(grown.graph);
}

}  // namespace detail

/// One V-cycle: coarsen, edit the coarsest level, then repeatedly project to
/// the next finer level (unedited aggregates first, edited ones second) and
/// edit there. Level-i editing is steered by Q_i of the stored hierarchy.
inline std::pair<Graph, RunReport> generate(const Graph& g0, const GeneratorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SeededRng rng(config.seed);
  std::vector<std::size_t> seed_counts;
  const auto levels = build_hierarchy(g0, config, rng, &seed_counts);
  const std::size_t k = levels.size() - 1;

  RunReport report;
  report.seed = config.seed;
  report.ignored_rate_entries = config.depth() > levels.size() ? config.depth() - levels.size() : 0;
  report.levels.resize(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    auto& lr = report.levels[i];
    lr.level = i;
    lr.nodes = levels[i].graph.num_nodes();
    lr.edges = levels[i].graph.num_edges();
    if (levels[i].map) {
      lr.seeds = seed_counts[i];
      lr.aggregates = levels[i].map->num_coarse();
    }
  }

  Graph current = detail::edit_level(levels[k].graph, levels[k].profile,
                                     config.rates_at(k, levels.size()), config, rng,
                                     report.levels[k]);
  for (std::size_t i = k; i-- > 0;) {
    const HierarchyLevel& fine = levels[i];
    const EditLedger ledger = diff_ledger(levels[i + 1].graph, current);
    Graph partial = interpolate_unedited(current, ledger, *fine.map, fine.graph);
    InterpolationStats stats;
    current = interpolate_edited(current, partial, ledger, *fine.map, fine.profile, rng,
                                 config.retries, &stats, config.spath_cap);
    report.levels[i].interpolation_attempted = stats.attempted_edges;
    report.levels[i].interpolation_dropped = stats.dropped_edges;
    report.levels[i].spawned_nodes = stats.spawned_nodes;
    current = detail::edit_level(current, fine.profile, config.rates_at(i, levels.size()), config,
                                 rng, report.levels[i]);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(current), std::move(report)};
}

/// `count` independent runs; run j uses child_seed(config.seed, j). Runs are
/// spread over `jobs` threads and returned in run order.
inline std::vector<std::pair<Graph, RunReport>> replicate(const Graph& g0,
                                                          const GeneratorConfig& config,
                                                          std::size_t count, std::size_t jobs = 1) {
  if (count == 0) throw ConfigError("replica count must be >= 1");
  config.validate();
  std::vector<std::pair<Graph, RunReport>> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < count; j = next++) {
      try {
        GeneratorConfig child = config;
        child.seed = child_seed(config.seed, j);
        out[j] = generate(g0, child);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Named parameter sets.
namespace presets {

inline constexpr std::size_t kDepth = 6;

inline GeneratorConfig with_rates(std::vector<double> edit, std::vector<double> edge_growth,
                                  std::vector<double> node_growth, RateAnchor anchor) {
  GeneratorConfig c;
  c.edge_edit_rates = std::move(edit);
  c.edge_growth_rates = std::move(edge_growth);
  c.node_growth_rates = std::move(node_growth);
  c.anchor = anchor;
  return c;
}

/// 5% edits on the two coarsest levels.
inline GeneratorConfig musketeer_coarse() {
  return with_rates({0, 0, 0, 0, 0.05, 0.05}, std::vector<double>(kDepth, 0.0),
                    std::vector<double>(kDepth, 0.0), RateAnchor::coarsest);
}
/// 5% edits on the two finest levels.
inline GeneratorConfig musketeer_fine() {
  return with_rates({0.05, 0.05, 0, 0, 0, 0}, std::vector<double>(kDepth, 0.0),
                    std::vector<double>(kDepth, 0.0), RateAnchor::finest);
}
/// 1% edits on every level.
inline GeneratorConfig musketeer_all() {
  return with_rates(std::vector<double>(kDepth, 0.01), std::vector<double>(kDepth, 0.0),
                    std::vector<double>(kDepth, 0.0), RateAnchor::finest);
}
/// 30% edge and node growth on the four coarsest levels.
inline GeneratorConfig rescale_coarse() {
  const std::vector<double> g{0, 0, 0.3, 0.3, 0.3, 0.3};
  return with_rates(std::vector<double>(kDepth, 0.0), g, g, RateAnchor::coarsest);
}
/// 30% edge and node growth on the four finest levels.
inline GeneratorConfig rescale_fine() {
  const std::vector<double> g{0.3, 0.3, 0.3, 0.3, 0, 0};
  return with_rates(std::vector<double>(kDepth, 0.0), g, g, RateAnchor::finest);
}
/// Uniform edge and node growth on every level (15% or 10%).
inline GeneratorConfig rescale_all(double rate = 0.15) {
  const std::vector<double> g(kDepth, rate);
  return with_rates(std::vector<double>(kDepth, 0.0), g, g, RateAnchor::finest);
}

}  // namespace presets

}  // namespace mpng

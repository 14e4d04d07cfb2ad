#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mpng/mpng.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kInternalError = 3;

struct GenerateOptions {
  std::string input;
  std::string output;
  std::string output_dir;
  std::string report;
  std::string preset;
  double alpha = 0.5;
  std::vector<double> edit_rates;
  std::vector<double> edge_growth_rates;
  std::vector<double> node_growth_rates;
  std::uint64_t seed = 0;
  int retries = 10;
  std::size_t count = 1;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::size_t sample_cap = 5000;
};

const std::map<std::string, mpng::GeneratorConfig (*)()>& preset_table() {
  static const std::map<std::string, mpng::GeneratorConfig (*)()> table{
      {"musketeer-coarse", &mpng::presets::musketeer_coarse},
      {"musketeer-fine", &mpng::presets::musketeer_fine},
      {"musketeer-all", &mpng::presets::musketeer_all},
      {"rescale-coarse", &mpng::presets::rescale_coarse},
      {"rescale-fine", &mpng::presets::rescale_fine},
      {"rescale-all", [] { return mpng::presets::rescale_all(0.15); }},
      {"rescale-all-010", [] { return mpng::presets::rescale_all(0.10); }},
  };
  return table;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : preset_table()) names.push_back(name);
  return names;
}

/// Rate vectors from a preset and/or explicit flags. A vector that is not
/// given becomes zeros of the common length; `growth_follows_nodes` makes a
/// missing edge-growth vector copy the node-growth one (rescale).
mpng::GeneratorConfig build_config(const GenerateOptions& o, bool growth_follows_nodes) {
  mpng::GeneratorConfig cfg;
  if (!o.preset.empty()) cfg = preset_table().at(o.preset)();
  cfg.alpha = o.alpha;
  cfg.seed = o.seed;
  cfg.retries = o.retries;

  std::size_t len = 0;
  for (const auto* v : {&o.edit_rates, &o.edge_growth_rates, &o.node_growth_rates})
    if (!v->empty()) {
      if (len != 0 && v->size() != len)
        throw mpng::ConfigError(
            "--edit-rates, --edge-growth-rates and --node-growth-rates must have the same number of entries");
      len = v->size();
    }
  if (len == 0) {
    cfg.validate();
    return cfg;
  }
  if (!o.preset.empty() && len != cfg.depth())
    throw mpng::ConfigError("rate flags combined with --preset " + o.preset + " need " +
                            std::to_string(cfg.depth()) + " entries");
  const std::vector<double> zeros(len, 0.0);
  auto pick = [&](const std::vector<double>& given, const std::vector<double>& from_preset) {
    if (!given.empty()) return given;
    return o.preset.empty() ? zeros : from_preset;
  };
  cfg.edge_edit_rates = pick(o.edit_rates, cfg.edge_edit_rates);
  cfg.node_growth_rates = pick(o.node_growth_rates, cfg.node_growth_rates);
  if (o.edge_growth_rates.empty() && growth_follows_nodes && o.preset.empty())
    cfg.edge_growth_rates = cfg.node_growth_rates;
  else
    cfg.edge_growth_rates = pick(o.edge_growth_rates, cfg.edge_growth_rates);
  cfg.validate();
  return cfg;
}

/// Reads an edge list, picking up a "<path>.labels" file next to it.
mpng::io::LabeledGraph load(const std::string& path) {
  const std::string labels = path + ".labels";
  auto lg = mpng::io::read_edge_list_file(path, fs::exists(labels) ? labels : "");
  for (const auto& w : lg.warnings) std::cerr << "warning: " << w << '\n';
  return lg;
}

void warn_ignored(const mpng::RunReport& report) {
  if (report.ignored_rate_entries > 0)
    std::cerr << "warning: hierarchy reached " << report.levels.size() << " level(s); "
              << report.ignored_rate_entries << " rate entr"
              << (report.ignored_rate_entries == 1 ? "y was" : "ies were") << " ignored\n";
}

void add_generator_flags(CLI::App* cmd, GenerateOptions& o) {
  cmd->add_option("--alpha", o.alpha, "Seed-selection threshold in [0,1]")->capture_default_str();
  cmd->add_option("--edit-rates", o.edit_rates, "Per-level edge edit rates, finest level first")
      ->delimiter(',');
  cmd->add_option("--edge-growth-rates", o.edge_growth_rates, "Per-level edge growth rates")
      ->delimiter(',');
  cmd->add_option("--node-growth-rates", o.node_growth_rates, "Per-level node growth rates")
      ->delimiter(',');
  cmd->add_option("--seed", o.seed, "Random seed")->envname("MPNG_SEED")->capture_default_str();
  cmd->add_option("--retries", o.retries, "Re-draws before an insertion is dropped")
      ->capture_default_str();
  cmd->add_option("--preset", o.preset, "Named rate set")
      ->check(CLI::IsMember(preset_names()));
}

int run_generate(const GenerateOptions& o, bool rescale) {
  const auto cfg = build_config(o, rescale);
  const auto input = load(o.input);
  auto [graph, report] = mpng::generate(input.graph, cfg);
  warn_ignored(report);
  mpng::io::write_graph_files(o.output, graph, mpng::io::extend_labels(input.labels, graph.num_nodes()));
  std::cout << "levels " << report.levels.size() << ", nodes " << input.graph.num_nodes() << " -> "
            << graph.num_nodes() << ", edges " << input.graph.num_edges() << " -> "
            << graph.num_edges() << ", dropped insertions " << report.total_dropped() << " of "
            << report.total_insertions_attempted() << '\n';
  return 0;
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < count; j = next++) {
      try {
        fn(j);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

int run_replicate(const GenerateOptions& o) {
  const auto cfg = build_config(o, false);
  const auto input = load(o.input);
  const auto runs = mpng::replicate(input.graph, cfg, o.count, o.jobs);
  warn_ignored(runs.front().second);

  fs::create_directories(o.output_dir);
  const std::size_t width = std::max<std::size_t>(3, std::to_string(o.count - 1).size());
  for (std::size_t j = 0; j < runs.size(); ++j) {
    std::string id = std::to_string(j);
    id.insert(0, width - id.size(), '0');
    const auto& g = runs[j].first;
    mpng::io::write_graph_files((fs::path(o.output_dir) / ("replica_" + id + ".txt")).string(), g,
                                mpng::io::extend_labels(input.labels, g.num_nodes()));
  }

  if (!o.report.empty()) {
    mpng::SeededRng base_rng(o.seed);
    const auto baseline = mpng::compute_metrics(input.graph, o.sample_cap, base_rng);
    std::vector<mpng::io::ReportRow> rows(runs.size());
    parallel_for(runs.size(), o.jobs, [&](std::size_t j) {
      mpng::SeededRng rng(runs[j].second.seed);
      rows[j].replica_id = j;
      rows[j].seed = runs[j].second.seed;
      rows[j].metrics = mpng::compute_metrics(runs[j].first, o.sample_cap, rng);
      rows[j].normalized = mpng::normalize(rows[j].metrics, baseline);
    });
    std::ofstream out(o.report, std::ios::binary);
    if (!out) throw mpng::DataError("cannot write " + o.report);
    mpng::io::write_report_csv(out, rows);
  }
  std::cout << "wrote " << runs.size() << " replica(s) to " << o.output_dir << '\n';
  return 0;
}

int run_planarize(const std::string& in_path, const std::string& out_path, std::uint64_t seed) {
  const auto input = load(in_path);
  mpng::SeededRng rng(seed);
  const mpng::Graph g = mpng::maximal_planar_subgraph(input.graph, rng);
  mpng::io::write_graph_files(out_path, g, input.labels);
  std::cout << "kept " << g.num_edges() << " of " << input.graph.num_edges() << " edges\n";
  return 0;
}

int run_metrics(const std::string& in_path, const std::string& baseline_path, const std::string& out_path,
                std::size_t sample_cap, std::uint64_t seed) {
  const auto input = load(in_path);
  mpng::SeededRng rng(seed);
  mpng::io::ReportRow row{0, seed, mpng::compute_metrics(input.graph, sample_cap, rng), std::nullopt};
  if (!baseline_path.empty()) {
    const auto baseline = load(baseline_path);
    mpng::SeededRng brng(seed);
    row.normalized = mpng::normalize(row.metrics, mpng::compute_metrics(baseline.graph, sample_cap, brng));
  }
  if (out_path.empty()) {
    mpng::io::write_report_csv(std::cout, {row});
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mpng::DataError("cannot write " + out_path);
    mpng::io::write_report_csv(out, {row});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiscale planar network generator"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate one planar replica of a planar graph");
  generate->add_option("--input", gen.input, "Input edge list")->required()->check(CLI::ExistingFile);
  generate->add_option("--output", gen.output, "Output edge list")->required();
  add_generator_flags(generate, gen);

  GenerateOptions rep;
  auto* replicate = app.add_subcommand("replicate", "Generate several replicas with child seeds");
  replicate->add_option("--input", rep.input, "Input edge list")->required()->check(CLI::ExistingFile);
  replicate->add_option("--output-dir", rep.output_dir, "Directory for replica_NNN.txt files")->required();
  replicate->add_option("--count", rep.count, "Number of replicas")->required()->check(CLI::PositiveNumber);
  replicate->add_option("--report", rep.report, "Write a metrics CSV for all replicas");
  replicate->add_option("--jobs", rep.jobs, "Worker threads")->check(CLI::PositiveNumber);
  replicate->add_option("--sample-cap", rep.sample_cap, "Exact distance metrics up to this many nodes")
      ->capture_default_str();
  add_generator_flags(replicate, rep);

  GenerateOptions res;
  auto* rescale = app.add_subcommand("rescale", "Generate a larger replica by node and edge growth");
  rescale->add_option("--input", res.input, "Input edge list")->required()->check(CLI::ExistingFile);
  rescale->add_option("--output", res.output, "Output edge list")->required();
  add_generator_flags(rescale, res);

  std::string pl_in, pl_out;
  std::uint64_t pl_seed = 0;
  auto* planarize = app.add_subcommand("planarize", "Keep a maximal planar subgraph");
  planarize->add_option("--input", pl_in, "Input edge list")->required()->check(CLI::ExistingFile);
  planarize->add_option("--output", pl_out, "Output edge list")->required();
  planarize->add_option("--seed", pl_seed, "Random seed")->envname("MPNG_SEED");

  std::string m_in, m_base, m_out;
  std::size_t m_cap = 5000;
  std::uint64_t m_seed = 0;
  auto* metrics = app.add_subcommand("metrics", "Structural metrics as CSV");
  metrics->add_option("--input", m_in, "Edge list")->required()->check(CLI::ExistingFile);
  metrics->add_option("--baseline", m_base, "Normalize against this edge list")->check(CLI::ExistingFile);
  metrics->add_option("--out", m_out, "CSV path (default: stdout)");
  metrics->add_option("--sample-cap", m_cap, "Exact distance metrics up to this many nodes")
      ->capture_default_str();
  metrics->add_option("--seed", m_seed, "Seed for sampled metrics")->envname("MPNG_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) return run_generate(gen, false);
    if (*rescale) {
      if (res.node_growth_rates.empty() && res.preset.rfind("rescale", 0) != 0)
        throw mpng::ConfigError("rescale needs --node-growth-rates or a rescale-* --preset");
      return run_generate(res, true);
    }
    if (*replicate) return run_replicate(rep);
    if (*planarize) return run_planarize(pl_in, pl_out, pl_seed);
    if (*metrics) return run_metrics(m_in, m_base, m_out, m_cap, m_seed);
  } catch (const mpng::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const mpng::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

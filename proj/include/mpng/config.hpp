#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mpng/error.hpp"

namespace mpng {

/// Edit amounts for a single hierarchy level.
struct EditRates {
  double edge_edit_rate = 0.0;    ///< fraction of edges deleted and re-inserted, in [0,1]
  double edge_growth_rate = 0.0;  ///< extra insertions as a fraction of m
  double node_growth_rate = 0.0;  ///< new nodes as a fraction of n

  bool is_zero() const {
    return edge_edit_rate == 0.0 && edge_growth_rate == 0.0 && node_growth_rate == 0.0;
  }

  void validate() const {
    if (!(edge_edit_rate >= 0.0 && edge_edit_rate <= 1.0))
      throw ConfigError("edge edit rate must lie in [0,1], got " + std::to_string(edge_edit_rate));
    if (!(edge_growth_rate >= 0.0) || !std::isfinite(edge_growth_rate))
      throw ConfigError("edge growth rate must be finite and >= 0, got " +
                        std::to_string(edge_growth_rate));
    if (!(node_growth_rate >= 0.0) || !std::isfinite(node_growth_rate))
      throw ConfigError("node growth rate must be finite and >= 0, got " +
                        std::to_string(node_growth_rate));
  }
};

/// Which end of the hierarchy entry 0 of the rate vectors refers to once the
/// achieved depth is known. With `coarsest`, the vectors are right-aligned to
/// the coarsest level (used by presets that target "the k coarsest levels").
enum class RateAnchor { finest, coarsest };

struct GeneratorConfig {
  double alpha = 0.5;
  /// Per-level rates, finest level first. Their common length bounds the
  /// hierarchy depth.
  std::vector<double> edge_edit_rates{0.0};
  std::vector<double> edge_growth_rates{0.0};
  std::vector<double> node_growth_rates{0.0};
  RateAnchor anchor = RateAnchor::finest;

  double max_density = 0.9;
  std::size_t min_coarse_nodes = 8;
  int retries = 10;
  int spath_cap = 20;
  std::size_t spath_sample_min = 100;
  double spath_sample_fraction = 0.1;
  int loop_max_len = 6;
  std::size_t loop_samples = 200;
  std::uint64_t seed = 0;

  std::size_t depth() const { return edge_edit_rates.size(); }

  /// max(spath_sample_min, ceil(fraction * m)), capped at m.
  std::size_t spath_sample_size(std::size_t num_edges) const {
    const auto frac = static_cast<std::size_t>(
        std::ceil(spath_sample_fraction * static_cast<double>(num_edges)));
    return std::min(num_edges, std::max(spath_sample_min, frac));
  }

  /// Rates for `level` in a hierarchy of `num_levels` levels.
  EditRates rates_at(std::size_t level, std::size_t num_levels) const {
    std::size_t idx = level;
    if (anchor == RateAnchor::coarsest) {
      if (num_levels > depth()) return {};
      idx = depth() - num_levels + level;
    }
    if (idx >= depth()) return {};
    return {edge_edit_rates[idx], edge_growth_rates[idx], node_growth_rates[idx]};
  }

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw ConfigError("alpha must lie in [0,1], got " + std::to_string(alpha));
    if (edge_edit_rates.empty()) throw ConfigError("rate vectors must not be empty");
    if (edge_growth_rates.size() != depth() || node_growth_rates.size() != depth())
      throw ConfigError("edit, edge-growth and node-growth rate vectors must have equal length");
    for (std::size_t i = 0; i < depth(); ++i)
      EditRates{edge_edit_rates[i], edge_growth_rates[i], node_growth_rates[i]}.validate();
    if (!(max_density > 0.0 && max_density <= 1.0)) throw ConfigError("max_density must lie in (0,1]");
    if (retries < 0) throw ConfigError("retries must be >= 0");
    if (spath_cap < 2) throw ConfigError("spath_cap must be >= 2");
    if (loop_max_len < 3) throw ConfigError("loop_max_len must be >= 3");
  }
};

}  // namespace mpng

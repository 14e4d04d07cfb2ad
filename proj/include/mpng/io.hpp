#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mpng/error.hpp"
#include "mpng/graph.hpp"
#include "mpng/metrics.hpp"

namespace mpng::io {

/// Graph read from an edge list together with the label of each node id.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<std::string> warnings;
};

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

/// Parses an edge list: one "u v" or "u v w" per line, '#' starts a comment
/// line, blank lines are skipped. Labels are arbitrary tokens; ids are given
/// in order of first appearance, after any labels in `known_labels`.
/// Repeated pairs (in either orientation) merge by summing weights.
inline LabeledGraph read_edge_list(std::istream& in, const std::string& source = "<input>",
                                   const std::vector<std::string>& known_labels = {}) {
  LabeledGraph out;
  std::unordered_map<std::string, NodeId> ids;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(out.labels.size()));
    if (inserted) {
      out.labels.push_back(label);
      out.graph.add_node();
    }
    return it->second;
  };
  for (const auto& label : known_labels) {
    if (ids.contains(label)) throw DataError(source + ": duplicate label '" + label + "' in label map");
    id_of(label);
  }

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty() || parts.front().front() == '#') continue;
    auto fail = [&](const std::string& why) {
      return DataError(source + ":" + std::to_string(line_no) + ": " + why);
    };
    if (parts.size() < 2 || parts.size() > 3) throw fail("expected 'u v' or 'u v w'");
    double w = 1.0;
    if (parts.size() == 3) {
      const std::string& tok = parts[2];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(w) || w <= 0.0)
        throw fail("weight '" + tok + "' is not a positive number");
    }
    if (parts[0] == parts[1]) throw fail("self-loop on '" + parts[0] + "'");
    const NodeId u = id_of(parts[0]);
    const NodeId v = id_of(parts[1]);
    if (out.graph.has_edge(u, v))
      out.warnings.push_back(source + ":" + std::to_string(line_no) + ": duplicate edge " +
                             parts[0] + " " + parts[1] + " merged");
    out.graph.add_edge(u, v, w);
  }
  return out;
}

/// One label per line, in id order.
inline std::vector<std::string> read_labels(std::istream& in) {
  std::vector<std::string> labels;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    labels.push_back(tab == std::string::npos ? line : line.substr(tab + 1));
  }
  return labels;
}

inline LabeledGraph read_edge_list_file(const std::string& path, const std::string& labels_path = "") {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> known;
  if (!labels_path.empty()) {
    std::ifstream lin(labels_path);
    if (!lin) throw DataError("cannot open " + labels_path);
    known = read_labels(lin);
  }
  return read_edge_list(in, path, known);
}

/// Labels for a graph that may have grown past the original label list:
/// new ids get "v<id>", suffixed with '_' until unique.
inline std::vector<std::string> extend_labels(std::vector<std::string> labels, std::size_t n) {
  std::unordered_set<std::string> used(labels.begin(), labels.end());
  labels.reserve(n);
  for (std::size_t id = labels.size(); id < n; ++id) {
    std::string label = "v" + std::to_string(id);
    while (used.contains(label)) label += '_';
    used.insert(label);
    labels.push_back(std::move(label));
  }
  return labels;
}

/// Edges sorted by (u, v) id with u < v; the weight column is omitted for
/// weight exactly 1.
inline void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& labels) {
  if (labels.size() < g.num_nodes()) throw PreconditionError("write_edge_list: missing labels");
  for (const Edge& e : g.edges()) {
    out << labels[e.u] << ' ' << labels[e.v];
    if (e.weight != 1.0) out << ' ' << format_double(e.weight);
    out << '\n';
  }
}

/// "id<TAB>label" per node in id order; keeps isolated nodes and id order
/// recoverable when the edge list is read back.
inline void write_labels(std::ostream& out, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << '\t' << labels[i] << '\n';
}

inline void write_graph_files(const std::string& path, const Graph& g,
                              const std::vector<std::string>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  write_edge_list(out, g, labels);
  std::ofstream lab(path + ".labels", std::ios::binary);
  if (!lab) throw DataError("cannot write " + path + ".labels");
  write_labels(lab, labels);
}

/// Report row for one graph.
struct ReportRow {
  std::size_t replica_id = 0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  std::optional<NormalizedComparison> normalized;
};

/// CSV columns: replica_id, seed, the MetricsReport fields, distances_sampled,
/// norm_<field> for each field, and absolute_fields (';'-joined names whose
/// norm_ column is a difference because the baseline value is 0).
inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  const auto names = metric_fields(MetricsReport{});
  out << "replica_id,seed";
  for (const auto& [name, v] : names) out << ',' << name;
  out << ",distances_sampled";
  for (const auto& [name, v] : names) out << ",norm_" << name;
  out << ",absolute_fields\n";
  for (const ReportRow& row : rows) {
    out << row.replica_id << ',' << row.seed;
    for (const auto& [name, v] : metric_fields(row.metrics)) out << ',' << format_double(v);
    out << ',' << (row.metrics.distances_sampled ? 1 : 0);
    std::string absolute;
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << ',';
      if (!row.normalized) continue;
      const auto& nv = row.normalized->values[i];
      out << format_double(nv.value);
      if (nv.absolute) absolute += (absolute.empty() ? "" : ";") + nv.name;
    }
    out << ',' << absolute << '\n';
  }
}

}  // namespace mpng::io

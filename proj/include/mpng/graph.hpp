#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpng/error.hpp"

namespace mpng {

using NodeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected edge with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unordered node pair normalized so that first < second.
using NodePair = std::pair<NodeId, NodeId>;

inline NodePair make_pair_key(NodeId a, NodeId b) {
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

/// Simple undirected weighted graph with per-node volumes.
///
/// Node ids are dense (0..n-1). Adjacency lists are kept sorted by neighbor id,
/// so iteration order is deterministic and equality is structural. Inserting an
/// existing edge adds to its weight instead of creating a parallel edge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_nodes) : volume_(num_nodes, 1.0), adj_(num_nodes) {}

  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return adj_.empty(); }
  bool contains(NodeId v) const { return v < adj_.size(); }

  NodeId add_node(double volume = 1.0) {
    if (!(volume > 0.0)) throw PreconditionError("node volume must be positive");
    volume_.push_back(volume);
    adj_.emplace_back();
    return static_cast<NodeId>(adj_.size() - 1);
  }

  double volume(NodeId v) const {
    check(v);
    return volume_[v];
  }
  void set_volume(NodeId v, double volume) {
    check(v);
    if (!(volume > 0.0)) throw PreconditionError("node volume must be positive");
    volume_[v] = volume;
  }

  /// Adds {u,v} with weight w, or adds w to the weight of an existing {u,v}.
  void add_edge(NodeId u, NodeId v, double w = 1.0) {
    check(u);
    check(v);
    if (u == v) throw PreconditionError("self-loop " + std::to_string(u));
    if (!(w > 0.0)) throw PreconditionError("edge weight must be positive");
    if (bump(adj_[u], v, w)) {
      bump(adj_[v], u, w);
    } else {
      insert(adj_[u], v, w);
      insert(adj_[v], u, w);
      ++num_edges_;
    }
  }

  /// Removes {u,v}; returns false if it was not present.
  bool remove_edge(NodeId u, NodeId v) {
    check(u);
    check(v);
    if (!erase(adj_[u], v)) return false;
    erase(adj_[v], u);
    --num_edges_;
    return true;
  }

  bool has_edge(NodeId u, NodeId v) const {
    check(u);
    check(v);
    return find(adj_[u], v) != nullptr;
  }

  std::optional<double> weight(NodeId u, NodeId v) const {
    check(u);
    check(v);
    if (const Neighbor* n = find(adj_[u], v)) return n->weight;
    return std::nullopt;
  }

  std::span<const Neighbor> neighbors(NodeId v) const {
    check(v);
    return adj_[v];
  }

  std::size_t degree(NodeId v) const {
    check(v);
    return adj_[v].size();
  }

  double weighted_degree(NodeId v) const {
    check(v);
    double s = 0.0;
    for (const Neighbor& n : adj_[v]) s += n.weight;
    return s;
  }

  double total_weight() const {
    double s = 0.0;
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (const Neighbor& n : adj_[u])
        if (u < n.node) s += n.weight;
    return s;
  }

  double total_volume() const {
    double s = 0.0;
    for (double v : volume_) s += v;
    return s;
  }

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (const Neighbor& n : adj_[u])
        if (u < n.node) out.push_back({u, n.node, n.weight});
    return out;
  }

  std::vector<NodePair> edge_pairs() const {
    std::vector<NodePair> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (const Neighbor& n : adj_[u])
        if (u < n.node) out.emplace_back(u, n.node);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(NodeId v) const {
    if (v >= adj_.size()) throw PreconditionError("unknown node " + std::to_string(v));
  }

  static auto lower(std::vector<Neighbor>& list, NodeId v) {
    return std::lower_bound(list.begin(), list.end(), v,
                            [](const Neighbor& n, NodeId x) { return n.node < x; });
  }
  static const Neighbor* find(const std::vector<Neighbor>& list, NodeId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& n, NodeId x) { return n.node < x; });
    return it != list.end() && it->node == v ? &*it : nullptr;
  }
  static bool bump(std::vector<Neighbor>& list, NodeId v, double w) {
    auto it = lower(list, v);
    if (it == list.end() || it->node != v) return false;
    it->weight += w;
    return true;
  }
  static void insert(std::vector<Neighbor>& list, NodeId v, double w) {
    list.insert(lower(list, v), Neighbor{v, w});
  }
  static bool erase(std::vector<Neighbor>& list, NodeId v) {
    auto it = lower(list, v);
    if (it == list.end() || it->node != v) return false;
    list.erase(it);
    return true;
  }

  std::vector<double> volume_;
  std::vector<std::vector<Neighbor>> adj_;
  std::size_t num_edges_ = 0;
};

/// 2m / (n(n-1)); 0 when n <= 1.
inline double density(const Graph& g) {
  const double n = static_cast<double>(g.num_nodes());
  if (n <= 1.0) return 0.0;
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

inline double weighted_degree(const Graph& g, NodeId v) { return g.weighted_degree(v); }

/// Connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> out;
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const Neighbor& n : g.neighbors(v)) {
        if (!seen[n.node]) {
          seen[n.node] = 1;
          stack.push_back(n.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Component index per node, numbered in the order of connected_components.
inline std::vector<std::uint32_t> component_labels(const Graph& g) {
  std::vector<std::uint32_t> label(g.num_nodes(), UINT32_MAX);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (label[s] != UINT32_MAX) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const Neighbor& n : g.neighbors(v)) {
        if (label[n.node] == UINT32_MAX) {
          label[n.node] = next;
          stack.push_back(n.node);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Graph on `num_nodes` unit-volume nodes with the given unit-weight edges.
inline Graph make_graph(std::size_t num_nodes, std::span<const NodePair> edges) {
  Graph g(num_nodes);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph make_graph(std::size_t num_nodes, std::initializer_list<NodePair> edges) {
  return make_graph(num_nodes, std::span<const NodePair>(edges.begin(), edges.size()));
}

}  // namespace mpng

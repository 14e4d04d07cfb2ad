#pragma once

#include <set>

#include "mpng/graph.hpp"

namespace mpng {

/// Net changes an editing pass made to a level graph, relative to the graph
/// stored in the hierarchy. Node ids of the stored graph are preserved; added
/// nodes carry ids past the stored node count.
struct EditLedger {
  std::set<NodeId> deleted_nodes;
  std::set<NodeId> added_nodes;
  std::set<NodePair> deleted_edges;
  std::set<NodePair> added_edges;

  bool empty() const {
    return deleted_nodes.empty() && added_nodes.empty() && deleted_edges.empty() &&
           added_edges.empty();
  }

  // Deleting an edge added earlier in the same pass (or re-adding a deleted
  // one) cancels out, keeping the added and deleted sets disjoint.
  void add_edge(NodeId a, NodeId b) {
    const NodePair key = make_pair_key(a, b);
    if (deleted_edges.erase(key) == 0) added_edges.insert(key);
  }
  void delete_edge(NodeId a, NodeId b) {
    const NodePair key = make_pair_key(a, b);
    if (added_edges.erase(key) == 0) deleted_edges.insert(key);
  }
  void add_node(NodeId v) { added_nodes.insert(v); }

  /// Appends the changes of a later pass.
  void merge(const EditLedger& later) {
    for (NodeId v : later.added_nodes) add_node(v);
    for (auto [a, b] : later.deleted_edges) delete_edge(a, b);
    for (auto [a, b] : later.added_edges) add_edge(a, b);
    for (NodeId v : later.deleted_nodes) deleted_nodes.insert(v);
  }
};

/// Ledger turning `original` into `edited`, where `edited` keeps the ids of
/// `original` and may only append nodes.
inline EditLedger diff_ledger(const Graph& original, const Graph& edited) {
  if (edited.num_nodes() < original.num_nodes())
    throw StructuralError("diff_ledger: edited graph lost nodes");
  EditLedger ledger;
  for (NodeId v = static_cast<NodeId>(original.num_nodes()); v < edited.num_nodes(); ++v)
    ledger.added_nodes.insert(v);
  for (auto [u, v] : original.edge_pairs())
    if (!edited.has_edge(u, v)) ledger.deleted_edges.insert({u, v});
  for (auto [u, v] : edited.edge_pairs())
    if (v >= original.num_nodes() || !original.has_edge(u, v)) ledger.added_edges.insert({u, v});
  return ledger;
}

}  // namespace mpng

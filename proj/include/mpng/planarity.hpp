#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mpng/graph.hpp"
#include "mpng/rng.hpp"

namespace mpng {

namespace detail {

/// Left-right planarity test (de Fraysseix-Rosenstiehl criterion, in the
/// formulation of Brandes). Runs in O(n + m); both DFS phases are iterative so
/// long paths do not exhaust the call stack.
class LeftRightTest {
 public:
  LeftRightTest(std::size_t num_nodes, std::span<const NodePair> edges)
      : n_(num_nodes), m_(edges.size()) {
    ends_.assign(edges.begin(), edges.end());
    std::vector<std::size_t> deg(n_ + 1, 0);
    for (auto [u, v] : ends_) {
      ++deg[u];
      ++deg[v];
    }
    offset_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offset_[v + 1] = offset_[v] + deg[v];
    incident_.resize(2 * m_);
    std::vector<std::size_t> pos(offset_.begin(), offset_.end() - 1);
    for (std::size_t e = 0; e < m_; ++e) {
      incident_[pos[ends_[e].first]++] = static_cast<int>(e);
      incident_[pos[ends_[e].second]++] = static_cast<int>(e);
    }
  }

  bool run() {
    if (n_ > 2 && m_ > 3 * n_ - 6) return false;
    height_.assign(n_, kNone);
    parent_edge_.assign(n_, kNone);
    src_.assign(m_, kNone);
    dst_.assign(m_, kNone);
    lowpt_.assign(m_, 0);
    lowpt2_.assign(m_, 0);
    nesting_.assign(m_, 0);
    roots_.clear();
    for (NodeId v = 0; v < n_; ++v) {
      if (height_[v] == kNone) {
        height_[v] = 0;
        roots_.push_back(v);
        orient(v);
      }
    }
    order_outgoing();
    ref_.assign(m_, kNone);
    side_.assign(m_, 1);
    lowpt_edge_.assign(m_, kNone);
    stack_bottom_.assign(m_, 0);
    next_.assign(n_, 0);
    descended_.assign(n_, 0);
    for (NodeId r : roots_) {
      if (!test(r)) return false;
    }
    return true;
  }

  /// Clockwise rotation system of a planar embedding. Only valid after run()
  /// returned true; consumes the test state.
  std::vector<std::vector<NodeId>> embedding() {
    for (std::size_t e = 0; e < m_; ++e) nesting_[e] *= sign(static_cast<int>(e));
    for (std::size_t v = 0; v < n_; ++v) {
      auto first = outgoing_.begin() + static_cast<std::ptrdiff_t>(out_offset_[v]);
      auto last = outgoing_.begin() + static_cast<std::ptrdiff_t>(out_offset_[v + 1]);
      std::sort(first, last, [&](int a, int b) {
        return nesting_[a] != nesting_[b] ? nesting_[a] < nesting_[b] : a < b;
      });
    }
    std::vector<std::vector<NodeId>> rot(n_);
    for (std::size_t v = 0; v < n_; ++v)
      for (std::size_t i = out_offset_[v]; i < out_offset_[v + 1]; ++i)
        rot[v].push_back(static_cast<NodeId>(dst_[outgoing_[i]]));
    std::vector<NodeId> left_ref(n_, 0), right_ref(n_, 0);
    auto place = [&rot](NodeId at, NodeId ref, NodeId v, bool after) {
      auto& list = rot[at];
      auto it = std::find(list.begin(), list.end(), ref);
      list.insert(after ? it + 1 : it, v);
    };
    std::fill(next_.begin(), next_.end(), 0);
    for (NodeId root : roots_) {
      std::vector<NodeId> stack{root};
      while (!stack.empty()) {
        const NodeId v = stack.back();
        const std::size_t count = out_offset_[v + 1] - out_offset_[v];
        if (next_[v] == count) {
          stack.pop_back();
          continue;
        }
        const int ei = outgoing_[out_offset_[v] + next_[v]++];
        const NodeId w = static_cast<NodeId>(dst_[ei]);
        if (parent_edge_[w] == ei) {
          rot[w].insert(rot[w].begin(), v);
          left_ref[v] = w;
          right_ref[v] = w;
          stack.push_back(w);
        } else if (side_[ei] == 1) {
          place(w, right_ref[w], v, true);
        } else {
          place(w, left_ref[w], v, false);
          left_ref[w] = v;
        }
      }
    }
    return rot;
  }

 private:
  static constexpr int kNone = -1;

  struct Interval {
    int low = kNone;
    int high = kNone;
    bool empty() const { return low == kNone && high == kNone; }
  };
  struct ConflictPair {
    Interval left;
    Interval right;
    void swap() { std::swap(left, right); }
  };

  NodeId other(int e, NodeId v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
  }

  void finish_edge(NodeId v, int e) {
    nesting_[e] = 2 * lowpt_[e];
    if (lowpt2_[e] < height_[v]) nesting_[e] += 1;
    const int pe = parent_edge_[v];
    if (pe == kNone) return;
    if (lowpt_[e] < lowpt_[pe]) {
      lowpt2_[pe] = std::min(lowpt_[pe], lowpt2_[e]);
      lowpt_[pe] = lowpt_[e];
    } else if (lowpt_[e] > lowpt_[pe]) {
      lowpt2_[pe] = std::min(lowpt2_[pe], lowpt_[e]);
    } else {
      lowpt2_[pe] = std::min(lowpt2_[pe], lowpt2_[e]);
    }
  }

  void orient(NodeId root) {
    std::vector<NodeId> stack{root};
    std::vector<std::size_t>& next = cursor_;
    if (next.size() != n_) next.assign(n_, 0);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      const std::size_t deg = offset_[v + 1] - offset_[v];
      if (next[v] < deg) {
        const int e = incident_[offset_[v] + next[v]];
        if (src_[e] != kNone) {
          ++next[v];
          continue;
        }
        const NodeId w = other(e, v);
        src_[e] = static_cast<int>(v);
        dst_[e] = static_cast<int>(w);
        lowpt_[e] = height_[v];
        lowpt2_[e] = height_[v];
        if (height_[w] == kNone) {
          parent_edge_[w] = e;
          height_[w] = height_[v] + 1;
          stack.push_back(w);
        } else {
          lowpt_[e] = height_[w];
          finish_edge(v, e);
          ++next[v];
        }
      } else {
        stack.pop_back();
        const int pe = parent_edge_[v];
        if (pe != kNone) {
          const NodeId u = static_cast<NodeId>(src_[pe]);
          finish_edge(u, pe);
          ++next[u];
        }
      }
    }
  }

  // Outgoing edges per node in nondecreasing nesting depth, via one stable
  // counting sort over all edges.
  void order_outgoing() {
    out_offset_.assign(n_ + 1, 0);
    for (std::size_t e = 0; e < m_; ++e) ++out_offset_[src_[e] + 1];
    for (std::size_t v = 0; v < n_; ++v) out_offset_[v + 1] += out_offset_[v];
    const std::size_t buckets = 2 * n_ + 2;
    std::vector<std::size_t> start(buckets + 1, 0);
    for (std::size_t e = 0; e < m_; ++e) ++start[nesting_[e] + 1];
    for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
    std::vector<int> by_nesting(m_);
    for (std::size_t e = 0; e < m_; ++e) by_nesting[start[nesting_[e]]++] = static_cast<int>(e);
    outgoing_.assign(m_, 0);
    std::vector<std::size_t> pos(out_offset_.begin(), out_offset_.end() - 1);
    for (int e : by_nesting) outgoing_[pos[src_[e]]++] = e;
  }

  int sign(int e) {
    chain_.clear();
    while (ref_[e] != kNone) {
      chain_.push_back(e);
      e = ref_[e];
    }
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      side_[*it] = static_cast<signed char>(side_[*it] * side_[e]);
      ref_[*it] = kNone;
      e = *it;
    }
    return side_[e];
  }

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[i.high] > lowpt_[b];
  }

  int lowest(const ConflictPair& p) const {
    if (p.left.empty()) return lowpt_[p.right.low];
    if (p.right.empty()) return lowpt_[p.left.low];
    return std::min(lowpt_[p.left.low], lowpt_[p.right.low]);
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    do {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (!q.left.empty()) q.swap();
      if (!q.left.empty()) return false;
      if (lowpt_[q.right.low] > lowpt_[e]) {
        if (p.right.empty()) {
          p.right = q.right;
        } else {
          ref_[p.right.low] = q.right.high;
        }
        p.right.low = q.right.low;
      } else {
        ref_[q.right.low] = lowpt_edge_[e];
      }
    } while (stack_.size() != stack_bottom_[ei]);

    while (!stack_.empty() &&
           (conflicting(stack_.back().left, ei) || conflicting(stack_.back().right, ei))) {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (conflicting(q.right, ei)) q.swap();
      if (conflicting(q.right, ei)) return false;
      if (p.right.low != kNone) ref_[p.right.low] = q.right.high;
      if (q.right.low != kNone) p.right.low = q.right.low;
      if (p.left.empty()) {
        p.left = q.left;
      } else {
        ref_[p.left.low] = q.left.high;
      }
      p.left.low = q.left.low;
    }
    if (!(p.left.empty() && p.right.empty())) stack_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    const int u = src_[e];
    while (!stack_.empty() && lowest(stack_.back()) == height_[u]) {
      if (stack_.back().left.low != kNone) side_[stack_.back().left.low] = -1;
      stack_.pop_back();
    }
    if (!stack_.empty()) {
      ConflictPair p = stack_.back();
      stack_.pop_back();
      while (p.left.high != kNone && dst_[p.left.high] == u) p.left.high = ref_[p.left.high];
      if (p.left.high == kNone && p.left.low != kNone) {
        ref_[p.left.low] = p.right.low;
        side_[p.left.low] = -1;
        p.left.low = kNone;
      }
      while (p.right.high != kNone && dst_[p.right.high] == u) p.right.high = ref_[p.right.high];
      if (p.right.high == kNone && p.right.low != kNone) {
        ref_[p.right.low] = p.left.low;
        side_[p.right.low] = -1;
        p.right.low = kNone;
      }
      stack_.push_back(p);
    }
    if (lowpt_[e] < height_[u] && !stack_.empty()) {
      const int hl = stack_.back().left.high;
      const int hr = stack_.back().right.high;
      ref_[e] = (hl != kNone && (hr == kNone || lowpt_[hl] > lowpt_[hr])) ? hl : hr;
    }
  }

  bool test(NodeId root) {
    std::vector<NodeId> stack{root};
    auto& next = next_;
    auto& descended = descended_;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      const std::size_t count = out_offset_[v + 1] - out_offset_[v];
      if (next[v] < count) {
        const int ei = outgoing_[out_offset_[v] + next[v]];
        const NodeId w = static_cast<NodeId>(dst_[ei]);
        if (!descended[v]) {
          stack_bottom_[ei] = stack_.size();
          if (parent_edge_[w] == ei) {
            descended[v] = 1;
            stack.push_back(w);
            continue;
          }
          lowpt_edge_[ei] = ei;
          stack_.push_back(ConflictPair{Interval{}, Interval{ei, ei}});
        }
        descended[v] = 0;
        if (lowpt_[ei] < height_[v]) {
          const int e = parent_edge_[v];
          if (next[v] == 0) {
            lowpt_edge_[e] = lowpt_edge_[ei];
          } else if (!add_constraints(ei, e)) {
            return false;
          }
        }
        ++next[v];
      } else {
        stack.pop_back();
        if (parent_edge_[v] != kNone) remove_back_edges(parent_edge_[v]);
      }
    }
    return true;
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<NodePair> ends_;
  std::vector<std::size_t> offset_;
  std::vector<int> incident_;
  std::vector<std::size_t> cursor_;

  std::vector<int> height_;
  std::vector<int> parent_edge_;
  std::vector<int> src_;
  std::vector<int> dst_;
  std::vector<int> lowpt_;
  std::vector<int> lowpt2_;
  std::vector<int> nesting_;

  std::vector<std::size_t> out_offset_;
  std::vector<int> outgoing_;

  std::vector<NodeId> roots_;
  std::vector<int> ref_;
  std::vector<signed char> side_;
  std::vector<int> chain_;
  std::vector<int> lowpt_edge_;
  std::vector<std::size_t> stack_bottom_;
  std::vector<ConflictPair> stack_;
  std::vector<std::size_t> next_;
  std::vector<char> descended_;
};

/// Shrinks a non-planar edge set to an edge-minimal non-planar subset, which
/// is a subdivision of K5 or K3,3 (plus isolated nodes).
inline std::vector<NodePair> minimal_nonplanar_subset(std::size_t num_nodes,
                                                      std::vector<NodePair> edges) {
  std::size_t i = 0;
  while (i < edges.size()) {
    NodePair removed = edges[i];
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
    if (LeftRightTest(num_nodes, edges).run()) {
      edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(i), removed);
      ++i;
    }
  }
  return edges;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

struct PlanarityVerdict {
  bool planar = true;
  /// Edges of a Kuratowski subdivision; only filled when requested and the
  /// graph is non-planar.
  std::optional<std::vector<NodePair>> witness;
};

inline bool is_planar_edges(std::size_t num_nodes, std::span<const NodePair> edges) {
  return detail::LeftRightTest(num_nodes, edges).run();
}

inline PlanarityVerdict is_planar(const Graph& g, bool with_witness = false) {
  const std::vector<NodePair> edges = g.edge_pairs();
  PlanarityVerdict verdict;
  verdict.planar = is_planar_edges(g.num_nodes(), edges);
  if (!verdict.planar && with_witness) {
    verdict.witness = detail::minimal_nonplanar_subset(g.num_nodes(), edges);
  }
  return verdict;
}

/// Whether g + {u,v} is planar. g is not modified.
inline bool admits_edge(const Graph& g, NodeId u, NodeId v) {
  if (!g.contains(u) || !g.contains(v)) throw PreconditionError("admits_edge: unknown node");
  if (u == v) throw PreconditionError("admits_edge: self-loop");
  if (g.has_edge(u, v)) throw PreconditionError("admits_edge: edge already present");
  std::vector<NodePair> edges = g.edge_pairs();
  edges.push_back(make_pair_key(u, v));
  return is_planar_edges(g.num_nodes(), edges);
}

/// Planar embedding kept in step with a graph that changes by node additions
/// and edge insertions and deletions, answering whether an edge can be added
/// without losing planarity.
///
/// Answers are exact. An edge whose ends share a face of the current embedding
/// is accepted in time proportional to the faces around one end. Otherwise a
/// minor of the graph around both ends (a ball with its surrounding shell
/// contracted) is tested first, which refutes most non-planar insertions
/// cheaply; only when that is inconclusive does a full test run, on the one
/// biconnected block the edge would close, re-embedding that block if it fits.
class PlanarityGuard {
 public:
  struct Stats {
    std::size_t face_accepts = 0;
    std::size_t local_rejects = 0;
    std::size_t full_accepts = 0;
    std::size_t full_rejects = 0;
  };

  /// g must be planar.
  explicit PlanarityGuard(const Graph& g) : rot_(g.num_nodes()), joined_(g.num_nodes()) {
    const std::vector<NodePair> edges = g.edge_pairs();
    for (auto [a, b] : edges) joined_.unite(a, b);
    detail::LeftRightTest lr(g.num_nodes(), edges);
    if (!lr.run()) throw PreconditionError("PlanarityGuard: graph is not planar");
    rot_ = lr.embedding();
    stamp_.assign(rot_.size(), 0);
    dist_.assign(rot_.size(), 0);
    slot_.assign(rot_.size(), 0);
  }

  std::size_t num_nodes() const { return rot_.size(); }
  const Stats& stats() const { return stats_; }
  /// Clockwise neighbor order of v in the current embedding.
  std::span<const NodeId> rotation(NodeId v) const { return rot_[v]; }

  NodeId add_node() {
    rot_.emplace_back();
    stamp_.push_back(0);
    dist_.push_back(0);
    slot_.push_back(0);
    joined_.add();
    return static_cast<NodeId>(rot_.size() - 1);
  }

  void remove_edge(NodeId u, NodeId v) {
    erase(rot_[u], v);
    erase(rot_[v], u);
  }

  /// Adds {u,v} if the graph stays planar and reports whether it did. The edge
  /// must not be present already.
  bool try_add_edge(NodeId u, NodeId v) {
    if (u >= rot_.size() || v >= rot_.size()) throw PreconditionError("PlanarityGuard: unknown node");
    if (u == v) throw PreconditionError("PlanarityGuard: self-loop");
    if (std::find(rot_[u].begin(), rot_[u].end(), v) != rot_[u].end())
      throw PreconditionError("PlanarityGuard: edge already present");
    return insert(u, v);
  }

 private:
  bool adjacent(NodeId a, NodeId b) const {
    return std::find(rot_[a].begin(), rot_[a].end(), b) != rot_[a].end();
  }

  // A leaf can sit in any face around its neighbor, so an edge from a leaf x
  // with neighbor w to v fits exactly when w-v does (or already exists): the
  // new edge then runs alongside w-v. Leaves are peeled until neither end is
  // one, and the embedding for the remaining pair is subdivided on the way back.
  bool insert(NodeId u, NodeId v) {
    struct Peeled {
      NodeId leaf;
      NodeId stem;
      NodeId other;
      std::size_t slot;
    };
    std::vector<Peeled> peeled;
    NodeId a = u, b = v;
    bool ok = false;
    while (true) {
      if (joined_.find(a) != joined_.find(b) || rot_[a].empty() || rot_[b].empty()) {
        // Separate components embed independently, so any corners will do.
        rot_[a].push_back(b);
        rot_[b].push_back(a);
        joined_.unite(a, b);
        ++stats_.face_accepts;
        ok = true;
        break;
      }
      if (!peeled.empty() && adjacent(a, b)) {
        const Peeled p = peeled.back();
        peeled.pop_back();
        rot_[p.stem].insert(rot_[p.stem].begin() + static_cast<std::ptrdiff_t>(position(p.stem, b) + 1),
                            p.leaf);
        rot_[p.leaf].push_back(p.stem);
        insert_in_common_face(p.leaf, p.other);
        ++stats_.face_accepts;
        ok = true;
        break;
      }
      if (rot_[a].size() == 1 || rot_[b].size() == 1) {
        if (rot_[a].size() != 1) std::swap(a, b);
        const NodeId stem = rot_[a][0];
        const std::size_t slot = position(stem, a);
        rot_[stem].erase(rot_[stem].begin() + static_cast<std::ptrdiff_t>(slot));
        rot_[a].clear();
        peeled.push_back({a, stem, b, slot});
        a = stem;
        continue;
      }
      ok = insert_nonleaf(a, b);
      break;
    }
    while (!peeled.empty()) {
      const Peeled p = peeled.back();
      peeled.pop_back();
      if (ok) {
        rot_[p.stem][position(p.stem, p.other)] = p.leaf;
        rot_[p.other][position(p.other, p.stem)] = p.leaf;
        rot_[p.leaf] = {p.stem, p.other};
      } else {
        rot_[p.stem].insert(rot_[p.stem].begin() + static_cast<std::ptrdiff_t>(p.slot), p.leaf);
        rot_[p.leaf] = {p.stem};
      }
    }
    return ok;
  }

  bool insert_nonleaf(NodeId u, NodeId v) {
    if (insert_in_common_face(u, v)) {
      ++stats_.face_accepts;
      return true;
    }
    if (local_obstruction(u, v, 3) || local_obstruction(u, v, 8)) {
      ++stats_.local_rejects;
      return false;
    }
    // Only the block of G + uv that contains uv can become non-planar, and
    // the rest of the embedding can be kept around it.
    const std::vector<NodeId> block = block_with_edge(u, v);
    ++epoch_;
    for (std::size_t i = 0; i < block.size(); ++i) {
      stamp_[block[i]] = epoch_;
      slot_[block[i]] = i;
    }
    std::vector<NodePair> edges;
    for (NodeId x : block)
      for (NodeId y : rot_[x])
        if (stamp_[y] == epoch_ && x < y) edges.emplace_back(slot_[x], slot_[y]);
    edges.push_back(make_pair_key(static_cast<NodeId>(slot_[u]), static_cast<NodeId>(slot_[v])));
    detail::LeftRightTest lr(block.size(), edges);
    if (!lr.run()) {
      ++stats_.full_rejects;
      return false;
    }
    const auto local = lr.embedding();
    for (std::size_t i = 0; i < block.size(); ++i) {
      std::vector<NodeId> merged;
      merged.reserve(local[i].size() + rot_[block[i]].size());
      for (NodeId y : local[i]) merged.push_back(block[y]);
      // Pieces hanging off the block here keep their order, as one group.
      for (NodeId y : rot_[block[i]])
        if (stamp_[y] != epoch_) merged.push_back(y);
      rot_[block[i]] = std::move(merged);
    }
    ++stats_.full_accepts;
    return true;
  }

  static void erase(std::vector<NodeId>& list, NodeId x) {
    auto it = std::find(list.begin(), list.end(), x);
    if (it == list.end()) throw PreconditionError("PlanarityGuard: edge not present");
    list.erase(it);
  }

  std::size_t position(NodeId at, NodeId x) const {
    const auto& list = rot_[at];
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), x) - list.begin());
  }

  // Walks every face around u; a corner of v on one of them is where the edge
  // goes. Corner c of node x lies between rot_[x][c] and its clockwise successor.
  bool insert_in_common_face(NodeId u, NodeId v) {
    const std::size_t du = rot_[u].size();
    std::vector<char> done(du, 0);
    for (std::size_t c = 0; c < du; ++c) {
      if (done[c]) continue;
      done[c] = 1;
      NodeId x = u, y = rot_[u][c];
      while (true) {
        const auto& around = rot_[y];
        const std::size_t p = position(y, x);
        const std::size_t corner = (p + around.size() - 1) % around.size();
        if (y == v) {
          rot_[u].insert(rot_[u].begin() + static_cast<std::ptrdiff_t>(c + 1), v);
          rot_[v].insert(rot_[v].begin() + static_cast<std::ptrdiff_t>(corner + 1), u);
          return true;
        }
        if (y == u) {
          if (corner == c) break;
          done[corner] = 1;
        }
        x = y;
        y = around[corner];
      }
    }
    return false;
  }

  // Nodes of the biconnected component of G + uv that contains uv.
  std::vector<NodeId> block_with_edge(NodeId u, NodeId v) {
    ++epoch_;
    auto neighbor = [&](NodeId x, std::size_t i) {
      return i < rot_[x].size() ? rot_[x][i] : (x == u ? v : u);
    };
    auto degree = [&](NodeId x) { return rot_[x].size() + (x == u || x == v ? 1 : 0); };
    struct Frame {
      NodeId node;
      NodeId parent;
      std::size_t next;
    };
    std::vector<Frame> stack{{u, u, 0}};
    std::vector<NodePair> edge_stack;
    int time = 0;
    stamp_[u] = epoch_;
    dist_[u] = time++;
    low_.resize(rot_.size());
    seen_.resize(rot_.size(), 0);
    low_[u] = dist_[u];
    while (!stack.empty()) {
      Frame& f = stack.back();
      const NodeId x = f.node;
      if (f.next < degree(x)) {
        const NodeId y = neighbor(x, f.next++);
        if (y == f.parent && x != u) continue;
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          dist_[y] = time++;
          low_[y] = dist_[y];
          edge_stack.emplace_back(x, y);
          stack.push_back({y, x, 0});
        } else if (dist_[y] < dist_[x]) {
          edge_stack.emplace_back(x, y);
          low_[x] = std::min(low_[x], dist_[y]);
        }
        continue;
      }
      const NodeId child = x;
      const NodeId parent = f.parent;
      stack.pop_back();
      if (stack.empty()) break;
      low_[parent] = std::min(low_[parent], low_[child]);
      if (low_[child] < dist_[parent]) continue;
      auto bottom = edge_stack.end();
      bool found = false;
      do {
        --bottom;
        if ((bottom->first == u && bottom->second == v) || (bottom->first == v && bottom->second == u))
          found = true;
      } while (!(bottom->first == parent && bottom->second == child));
      if (found) {
        std::vector<NodeId> nodes;
        ++pass_;
        for (auto it = bottom; it != edge_stack.end(); ++it)
          for (NodeId x : {it->first, it->second})
            if (seen_[x] != pass_) {
              seen_[x] = pass_;
              nodes.push_back(x);
            }
        return nodes;
      }
      edge_stack.erase(bottom, edge_stack.end());
    }
    throw PreconditionError("PlanarityGuard: edge not in any block");
  }

  // Tests the minor formed by the nodes within `radius` of u or v, with each
  // connected piece of the next two layers contracted to a single node.
  // Minors of planar graphs are planar, so a non-planar result is conclusive.
  bool local_obstruction(NodeId u, NodeId v, int radius) {
    constexpr int kShell = 2;
    ++epoch_;
    std::vector<NodeId> order{u, v};
    for (NodeId s : order) {
      stamp_[s] = epoch_;
      dist_[s] = 0;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const NodeId x = order[i];
      if (dist_[x] == radius + kShell) continue;
      for (NodeId y : rot_[x]) {
        if (stamp_[y] == epoch_) continue;
        stamp_[y] = epoch_;
        dist_[y] = dist_[x] + 1;
        order.push_back(y);
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) slot_[order[i]] = i;
    detail::UnionFind pieces(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const NodeId x = order[i];
      if (dist_[x] <= radius) continue;
      for (NodeId y : rot_[x])
        if (stamp_[y] == epoch_ && dist_[y] > radius) pieces.unite(i, slot_[y]);
    }
    std::vector<std::size_t> id(order.size(), SIZE_MAX);
    std::size_t count = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t r = pieces.find(i);
      if (id[r] == SIZE_MAX) id[r] = count++;
      id[i] = id[r];
    }
    std::vector<NodePair> edges;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const NodeId x = order[i];
      for (NodeId y : rot_[x]) {
        if (stamp_[y] != epoch_ || y < x) continue;
        const std::size_t a = id[i], b = id[slot_[y]];
        if (a != b) edges.push_back(make_pair_key(static_cast<NodeId>(a), static_cast<NodeId>(b)));
      }
    }
    edges.push_back(make_pair_key(static_cast<NodeId>(id[0]), static_cast<NodeId>(id[1])));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return !is_planar_edges(count, edges);
  }

  std::vector<std::vector<NodeId>> rot_;
  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::vector<int> low_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t pass_ = 0;
  std::uint32_t epoch_ = 0;
  std::vector<std::size_t> slot_;
  // Merged on every insertion and never split, so nodes in different sets
  // are certainly in different components.
  detail::UnionFind joined_;
  Stats stats_;
};

/// Greedy maximal planar subgraph: edges are offered in a seeded random order
/// and kept whenever the kept set stays planar. Weights and volumes carry over.
inline Graph maximal_planar_subgraph(const Graph& g, SeededRng& rng) {
  std::vector<Edge> order = g.edges();
  rng.shuffle(order);
  Graph out(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) out.set_volume(v, g.volume(v));
  detail::UnionFind forest(g.num_nodes());
  std::vector<NodePair> kept;
  kept.reserve(order.size());
  for (const Edge& e : order) {
    // Joining two components of a planar graph never breaks planarity.
    bool keep = forest.find(e.u) != forest.find(e.v);
    if (!keep) {
      kept.emplace_back(e.u, e.v);
      keep = is_planar_edges(g.num_nodes(), kept);
      kept.pop_back();
    }
    if (keep) {
      kept.emplace_back(e.u, e.v);
      forest.unite(e.u, e.v);
      out.add_edge(e.u, e.v, e.weight);
    }
  }
  return out;
}

}  // namespace mpng

#pragma once

// Stallings graphs of finitely generated subgroups H < F_n.
//
// A FoldedGraph is the basepointed, folded x_1..x_n-labelled graph of H: for
// every label the successor map is a partial injection. It embeds in the
// Schreier graph of H, with the basepoint at the coset H. Its core is the
// subgraph left after repeatedly pruning vertices of valence <= 1, and both
// views keep the same vertex ids.
//
// Every x_i-cycle of the Schreier graph consists of core vertices (x_i is
// cyclically reduced), so loop sets computed on the finite core are the full
// loop sets L_{x_i}(H). An x_i-orbit that leaves the core enters a hanging
// tree through an edge oriented away from the core and cannot come back,
// since re-entry would need that tree's attachment edge traversed against
// its orientation. Exit times are therefore computed inside the core.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/word.hpp"

namespace corefree {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  Label label = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finitely many generators of H < F_n. Identity generators are dropped.
class SubgroupPresentation {
 public:
  SubgroupPresentation(std::size_t rank, std::vector<Word> generators)
      : rank_(rank) {
    if (rank < 2) {
      throw Error(ErrorKind::out_of_range, "ambient rank must be at least 2");
    }
    for (Word& w : generators) {
      if (w.rank() != rank) {
        throw Error(ErrorKind::rank_mismatch,
                    "generator of rank " + std::to_string(w.rank()) +
                        " in presentation of rank " + std::to_string(rank));
      }
      if (!w.is_identity()) generators_.push_back(std::move(w));
    }
  }

  std::size_t rank() const { return rank_; }
  const std::vector<Word>& generators() const { return generators_; }

  friend bool operator==(const SubgroupPresentation&,
                         const SubgroupPresentation&) = default;

 private:
  std::size_t rank_;
  std::vector<Word> generators_;
};

/// Folded basepointed graph with canonical breadth-first numbering: the
/// basepoint is 0 and neighbours are discovered in the order
/// x_1, x_1^-1, x_2, x_2^-1, ...
class FoldedGraph {
 public:
  /// Builds a graph from an explicit edge list. The edges must form a folded
  /// graph in which every vertex is reachable from `basepoint`; the result is
  /// renumbered canonically.
  static FoldedGraph from_edges(std::size_t rank, std::size_t vertex_count,
                                const std::vector<Edge>& edges,
                                Vertex basepoint = 0) {
    if (rank < 1) throw Error(ErrorKind::malformed_input, "rank must be positive");
    if (vertex_count < 1 || basepoint >= vertex_count) {
      throw Error(ErrorKind::malformed_input, "graph needs a basepoint vertex");
    }
    if (vertex_count >= kNoVertex) {
      throw Error(ErrorKind::malformed_input, "too many vertices");
    }
    std::vector<Vertex> succ(rank * vertex_count, kNoVertex);
    std::vector<Vertex> pred(rank * vertex_count, kNoVertex);
    for (const Edge& e : edges) {
      if (e.label < 1 || e.label > rank || e.from >= vertex_count ||
          e.to >= vertex_count) {
        throw Error(ErrorKind::malformed_input, "edge out of range");
      }
      Vertex& s = succ[(e.label - 1) * vertex_count + e.from];
      Vertex& p = pred[(e.label - 1) * vertex_count + e.to];
      if (s != kNoVertex || p != kNoVertex) {
        throw Error(ErrorKind::malformed_input,
                    "graph is not folded at label x" + std::to_string(e.label));
      }
      s = e.to;
      p = e.from;
    }
    return canonicalize(rank, vertex_count, succ, pred, basepoint);
  }

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  Vertex basepoint() const { return 0; }

  Vertex succ(Label i, Vertex v) const { return succ_[(i - 1) * vertex_count_ + v]; }
  Vertex pred(Label i, Vertex v) const { return pred_[(i - 1) * vertex_count_ + v]; }

  /// Endpoint of the edge read by `l` from v, or kNoVertex.
  Vertex step(Vertex v, const Letter& l) const {
    return l.sign > 0 ? succ(l.index, v) : pred(l.index, v);
  }

  /// Follows w from v; kNoVertex if the path falls off the graph.
  Vertex trace(Vertex v, const Word& w) const {
    for (const Letter& l : w.letters()) {
      v = step(v, l);
      if (v == kNoVertex) return kNoVertex;
    }
    return v;
  }

  std::size_t edge_count() const {
    return static_cast<std::size_t>(
        std::count_if(succ_.begin(), succ_.end(), [](Vertex t) { return t != kNoVertex; }));
  }

  /// Edges sorted by (from, to, label).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < vertex_count_; ++v) {
      for (Label i = 1; i <= rank_; ++i) {
        if (Vertex t = succ(i, v); t != kNoVertex) out.push_back(Edge{v, t, i});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out(vertex_count_);
    std::iota(out.begin(), out.end(), Vertex{0});
    return out;
  }

  /// Number of edge endpoints at v; a loop counts twice.
  std::size_t valence(Vertex v) const {
    std::size_t d = 0;
    for (Label i = 1; i <= rank_; ++i) {
      d += succ(i, v) != kNoVertex;
      d += pred(i, v) != kNoVertex;
    }
    return d;
  }

  friend bool operator==(const FoldedGraph&, const FoldedGraph&) = default;

 private:
  friend class Folder;

  FoldedGraph(std::size_t rank, std::size_t vertex_count, std::vector<Vertex> succ,
              std::vector<Vertex> pred)
      : rank_(rank),
        vertex_count_(vertex_count),
        succ_(std::move(succ)),
        pred_(std::move(pred)) {}

  static FoldedGraph canonicalize(std::size_t rank, std::size_t count,
                                  const std::vector<Vertex>& succ,
                                  const std::vector<Vertex>& pred, Vertex base) {
    std::vector<Vertex> relabel(count, kNoVertex);
    std::vector<Vertex> order;
    order.reserve(count);
    relabel[base] = 0;
    order.push_back(base);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const Vertex v = order[head];
      for (Label i = 1; i <= rank; ++i) {
        for (Vertex t : {succ[(i - 1) * count + v], pred[(i - 1) * count + v]}) {
          if (t != kNoVertex && relabel[t] == kNoVertex) {
            relabel[t] = static_cast<Vertex>(order.size());
            order.push_back(t);
          }
        }
      }
    }
    if (order.size() != count) {
      throw Error(ErrorKind::malformed_input,
                  "graph has vertices unreachable from the basepoint");
    }
    std::vector<Vertex> s(rank * count, kNoVertex), p(rank * count, kNoVertex);
    for (Vertex v = 0; v < count; ++v) {
      for (Label i = 1; i <= rank; ++i) {
        const std::size_t at = (i - 1) * count;
        if (Vertex t = succ[at + v]; t != kNoVertex) {
          s[at + relabel[v]] = relabel[t];
          p[at + relabel[t]] = relabel[v];
        }
      }
    }
    return FoldedGraph(rank, count, std::move(s), std::move(p));
  }

  std::size_t rank_;
  std::size_t vertex_count_;
  std::vector<Vertex> succ_;  // label-major: (i-1) * vertex_count + v
  std::vector<Vertex> pred_;
};

/// Incremental Stallings folding over union-find vertex classes. Each class
/// representative owns 2n slots (outgoing and incoming edge per label);
/// conflicting slots queue further merges.
class Folder {
 public:
  explicit Folder(std::size_t rank) : rank_(rank) { add_vertex(); }

  Vertex basepoint() const { return 0; }

  Vertex add_vertex() {
    const auto v = static_cast<Vertex>(parent_.size());
    parent_.push_back(v);
    class_size_.push_back(1);
    slots_.resize(slots_.size() + 2 * rank_, kNoVertex);
    return v;
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add_edge(Vertex from, Label i, Vertex to) {
    from = find(from);
    to = find(to);
    Vertex& out = slot(from, i, kOut);
    Vertex& in = slot(to, i, kIn);
    if (out != kNoVertex) {
      pending_.emplace_back(out, to);
    } else if (in != kNoVertex) {
      pending_.emplace_back(in, from);
    } else {
      out = to;
      in = from;
    }
    drain();
  }

  /// Adds a closed path reading w at the basepoint.
  void add_loop(const Word& w) {
    if (w.is_identity()) return;
    Vertex cur = basepoint();
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Vertex next = k + 1 == w.size() ? basepoint() : add_vertex();
      const Letter& l = w[k];
      if (l.sign > 0) {
        add_edge(cur, l.index, next);
      } else {
        add_edge(next, l.index, cur);
      }
      cur = next;
    }
  }

  FoldedGraph finish() {
    // Compact representatives, then renumber canonically.
    std::vector<Vertex> compact(parent_.size(), kNoVertex);
    std::size_t count = 0;
    for (Vertex v = 0; v < parent_.size(); ++v) {
      if (find(v) == v) compact[v] = static_cast<Vertex>(count++);
    }
    std::vector<Vertex> succ(rank_ * count, kNoVertex), pred(rank_ * count, kNoVertex);
    for (Vertex v = 0; v < parent_.size(); ++v) {
      if (parent_[v] != v) continue;
      for (Label i = 1; i <= rank_; ++i) {
        if (Vertex t = slot(v, i, kOut); t != kNoVertex) {
          const Vertex a = compact[v], b = compact[find(t)];
          succ[(i - 1) * count + a] = b;
          pred[(i - 1) * count + b] = a;
        }
      }
    }
    return FoldedGraph::canonicalize(rank_, count, succ, pred, compact[find(basepoint())]);
  }

 private:
  static constexpr int kOut = 0;
  static constexpr int kIn = 1;

  Vertex& slot(Vertex v, Label i, int dir) {
    return slots_[v * 2 * rank_ + 2 * (i - 1) + static_cast<std::size_t>(dir)];
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (class_size_[a] < class_size_[b]) std::swap(a, b);
      parent_[b] = a;
      class_size_[a] += class_size_[b];
      for (std::size_t s = 0; s < 2 * rank_; ++s) {
        const Vertex moved = slots_[b * 2 * rank_ + s];
        if (moved == kNoVertex) continue;
        Vertex& kept = slots_[a * 2 * rank_ + s];
        if (kept == kNoVertex) {
          kept = moved;
        } else {
          pending_.emplace_back(kept, moved);
        }
      }
    }
  }

  std::size_t rank_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> class_size_;
  std::vector<Vertex> slots_;
  std::vector<std::pair<Vertex, Vertex>> pending_;
};

inline FoldedGraph fold(const SubgroupPresentation& p) {
  Folder folder(p.rank());
  for (const Word& w : p.generators()) folder.add_loop(w);
  return folder.finish();
}

/// w in H iff w reads a closed path at the basepoint.
inline bool membership(const FoldedGraph& g, const Word& w) {
  if (w.rank() != g.rank()) {
    throw Error(ErrorKind::rank_mismatch, "word rank differs from graph rank");
  }
  return g.trace(g.basepoint(), w) == g.basepoint();
}

/// Index of H in F_n: the vertex count when the graph is 2n-regular (it is
/// then the whole Schreier graph), std::nullopt for infinite index.
inline std::optional<std::size_t> index(const FoldedGraph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) != 2 * g.rank()) return std::nullopt;
  }
  return g.vertex_count();
}

/// Free basis of H read off a spanning tree: one generator
/// t_u x_i t_v^-1 per edge u -x_i-> v outside the tree.
inline std::vector<Word> basis_of(const FoldedGraph& g) {
  const std::size_t n = g.rank();
  std::vector<Word> tree_path(g.vertex_count(), Word(n));
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::vector<bool>> tree_edge(n + 1, std::vector<bool>(g.vertex_count(), false));
  std::deque<Vertex> queue{g.basepoint()};
  seen[g.basepoint()] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Label i = 1; i <= n; ++i) {
      if (Vertex t = g.succ(i, v); t != kNoVertex && !seen[t]) {
        seen[t] = true;
        tree_edge[i][v] = true;
        tree_path[t] = tree_path[v] * Word::generator(n, i);
        queue.push_back(t);
      }
      if (Vertex t = g.pred(i, v); t != kNoVertex && !seen[t]) {
        seen[t] = true;
        tree_edge[i][t] = true;
        tree_path[t] = tree_path[v] * Word::power(n, i, -1);
        queue.push_back(t);
      }
    }
  }
  std::vector<Word> out;
  for (const Edge& e : g.edges()) {
    if (tree_edge[e.label][e.from]) continue;
    out.push_back(tree_path[e.from] * Word::generator(n, e.label) *
                  invert(tree_path[e.to]));
  }
  return out;
}

/// The core of a folded graph, sharing its vertex ids. May be empty (trivial
/// subgroup).
class CoreGraph {
 public:
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  /// Core vertex ids in increasing order.
  const std::vector<Vertex>& vertices() const { return vertices_; }
  bool contains(Vertex v) const { return v < in_core_.size() && in_core_[v]; }

  /// Core vertex where the based graph's basepoint attaches: the basepoint
  /// itself if it survives pruning, else the end of the hanging path.
  /// kNoVertex for an empty core.
  Vertex attachment() const { return attachment_; }

  /// Successor along x_i inside the core, or kNoVertex.
  Vertex succ(Label i, Vertex v) const {
    return contains(v) ? succ_[(i - 1) * in_core_.size() + v] : kNoVertex;
  }
  Vertex pred(Label i, Vertex v) const {
    return contains(v) ? pred_[(i - 1) * in_core_.size() + v] : kNoVertex;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex v : vertices_) {
      for (Label i = 1; i <= rank_; ++i) {
        if (Vertex t = succ(i, v); t != kNoVertex) out.push_back(Edge{v, t, i});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t edge_count() const { return edges().size(); }

  std::size_t valence(Vertex v) const {
    std::size_t d = 0;
    for (Label i = 1; i <= rank_; ++i) {
      d += succ(i, v) != kNoVertex;
      d += pred(i, v) != kNoVertex;
    }
    return d;
  }

 private:
  friend CoreGraph core(const FoldedGraph&);

  std::size_t rank_ = 0;
  std::vector<bool> in_core_;  // indexed by based-graph vertex id
  std::vector<Vertex> succ_;   // restricted to core edges, label-major
  std::vector<Vertex> pred_;
  std::vector<Vertex> vertices_;
  Vertex attachment_ = kNoVertex;
};

/// Prunes valence <= 1 vertices (the basepoint included) until none remain.
inline CoreGraph core(const FoldedGraph& g) {
  CoreGraph c;
  c.rank_ = g.rank();
  const std::size_t count = g.vertex_count();
  std::vector<std::size_t> valence(count);
  std::vector<bool> alive(count, true);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < count; ++v) {
    valence[v] = g.valence(v);
    if (valence[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (Label i = 1; i <= g.rank(); ++i) {
      for (Vertex t : {g.succ(i, v), g.pred(i, v)}) {
        if (t == kNoVertex || !alive[t] || t == v) continue;
        if (--valence[t] <= 1) queue.push_back(t);
      }
    }
  }
  c.in_core_ = alive;
  c.succ_.assign(g.rank() * count, kNoVertex);
  c.pred_.assign(g.rank() * count, kNoVertex);
  for (Vertex v = 0; v < count; ++v) {
    if (!alive[v]) continue;
    c.vertices_.push_back(v);
    for (Label i = 1; i <= g.rank(); ++i) {
      const Vertex t = g.succ(i, v);
      if (t != kNoVertex && alive[t]) {
        c.succ_[(i - 1) * count + v] = t;
        c.pred_[(i - 1) * count + t] = v;
      }
    }
  }
  if (!c.vertices_.empty()) {
    // Walk the hanging path from the basepoint into the core.
    Vertex v = g.basepoint(), from = kNoVertex;
    while (!alive[v]) {
      Vertex next = kNoVertex;
      for (Label i = 1; i <= g.rank() && next == kNoVertex; ++i) {
        for (Vertex t : {g.succ(i, v), g.pred(i, v)}) {
          if (t != kNoVertex && t != from) {
            next = t;
            break;
          }
        }
      }
      from = v;
      v = next;
    }
    c.attachment_ = v;
  }
  return c;
}

/// Rank of H: E - V + 1 for a nonempty core, 0 otherwise.
inline std::size_t rank(const CoreGraph& c) {
  if (c.empty()) return 0;
  return c.edge_count() + 1 - c.size();
}

/// Vertex-disjoint cycle of the partial injection succ_i.
struct LabelCycle {
  Label label = 1;
  std::vector<Vertex> vertices;  // in succ_i order, starting at the smallest id

  std::size_t length() const { return vertices.size(); }
  friend bool operator==(const LabelCycle&, const LabelCycle&) = default;
};

struct LoopSet {
  Label label = 1;
  std::vector<Vertex> vertices;  // increasing

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  bool contains(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  friend bool operator==(const LoopSet&, const LoopSet&) = default;
};

inline void check_label(const CoreGraph& c, Label i) {
  if (i < 1 || i > c.rank()) {
    throw Error(ErrorKind::out_of_range, "label x" + std::to_string(i) + " out of range");
  }
}

/// The succ_i-cycles of the core. Since succ_i is a partial injection its
/// orbits are chains or cycles; chains are exactly the orbits that contain a
/// vertex without predecessor.
inline std::vector<LabelCycle> xi_cycles(const CoreGraph& c, Label i) {
  check_label(c, i);
  std::vector<LabelCycle> out;
  std::vector<bool> settled(c.empty() ? 0 : c.vertices().back() + 1, false);
  for (Vertex v : c.vertices()) {
    if (c.pred(i, v) != kNoVertex) continue;
    for (Vertex u = v; u != kNoVertex; u = c.succ(i, u)) settled[u] = true;
  }
  for (Vertex v : c.vertices()) {
    if (settled[v]) continue;
    LabelCycle cyc{i, {}};
    for (Vertex u = v; !settled[u]; u = c.succ(i, u)) {
      settled[u] = true;
      cyc.vertices.push_back(u);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

inline LoopSet loop_set(const CoreGraph& c, Label i) {
  LoopSet s{i, {}};
  for (const LabelCycle& cyc : xi_cycles(c, i)) {
    s.vertices.insert(s.vertices.end(), cyc.vertices.begin(), cyc.vertices.end());
  }
  std::sort(s.vertices.begin(), s.vertices.end());
  return s;
}

/// All n loop sets, indexed by label - 1.
inline std::vector<LoopSet> loop_sets(const CoreGraph& c) {
  std::vector<LoopSet> out;
  for (Label i = 1; i <= c.rank(); ++i) out.push_back(loop_set(c, i));
  return out;
}

/// Size of the union of the loop sets.
inline std::size_t loop_union_size(const std::vector<LoopSet>& sets) {
  std::vector<Vertex> all;
  for (const LoopSet& s : sets) all.insert(all.end(), s.vertices.begin(), s.vertices.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

/// Least t >= 1 such that succ_i^t(v) is undefined inside the core. Bounded
/// by the core size.
inline std::size_t exit_time(const CoreGraph& c, Label i, Vertex v) {
  check_label(c, i);
  if (!c.contains(v)) {
    throw Error(ErrorKind::precondition, "vertex " + std::to_string(v) + " not in core");
  }
  std::size_t t = 0;
  for (Vertex u = v;;) {
    u = c.succ(i, u);
    ++t;
    if (u == kNoVertex) return t;
    if (u == v) {
      throw Error(ErrorKind::precondition, "vertex " + std::to_string(v) +
                                               " lies on an x" + std::to_string(i) +
                                               "-cycle");
    }
  }
}

}  // namespace corefree

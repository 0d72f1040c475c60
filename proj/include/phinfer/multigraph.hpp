#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "phinfer/position_heap.hpp"

namespace phinfer {

using EdgeId = std::size_t;
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Edge {
  NodeId tail;
  NodeId head;
  std::size_t multiplicity;
};

// Directed multigraph (V, E, multiplicity) without self-loops; each ordered
// node pair carries at most one edge. Out- and in-lists keep edge-id order.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::size_t node_count);

  // Throws std::invalid_argument on self-loops, zero multiplicity, unknown
  // nodes, or a repeated (tail, head) pair.
  EdgeId add_edge(NodeId tail, NodeId head, std::size_t multiplicity = 1);

  [[nodiscard]] std::size_t node_count() const noexcept { return out_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_[e]; }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] std::span<const EdgeId> out_edges(NodeId v) const { return out_[v]; }
  [[nodiscard]] std::span<const EdgeId> in_edges(NodeId v) const { return in_[v]; }
  [[nodiscard]] std::size_t out_multiplicity(NodeId v) const;
  [[nodiscard]] std::size_t in_multiplicity(NodeId v) const;
  [[nodiscard]] std::size_t total_multiplicity() const;
  [[nodiscard]] std::optional<EdgeId> find_edge(NodeId tail, NodeId head) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Priority edges: at most one per tail, each of multiplicity 1.
class PrioritySet {
 public:
  PrioritySet() = default;
  explicit PrioritySet(const Multigraph& g) : by_tail_(g.node_count(), kNoEdge) {}

  // Throws std::invalid_argument if `e` has multiplicity > 1 or its tail
  // already has a priority edge.
  void add(const Multigraph& g, EdgeId e);
  void remove_at(NodeId v) { by_tail_[v] = kNoEdge; }

  [[nodiscard]] EdgeId at(NodeId v) const { return v < by_tail_.size() ? by_tail_[v] : kNoEdge; }
  [[nodiscard]] bool contains(const Multigraph& g, EdgeId e) const { return at(g.edge(e).tail) == e; }
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::vector<EdgeId> edges() const;

  friend bool operator==(const PrioritySet&, const PrioritySet&) = default;

 private:
  std::vector<EdgeId> by_tail_;
};

// Arc-occurrence sequence starting and ending at `start`.
struct EulerCycle {
  NodeId start = 0;
  std::vector<EdgeId> arcs;

  friend bool operator==(const EulerCycle&, const EulerCycle&) = default;
};

// Out-edge choice per node such that every spanned node has exactly one
// path to `sink`. out_edge[v] is kNoEdge at the sink and at unspanned nodes.
struct OrientedTree {
  NodeId sink = 0;
  std::vector<EdgeId> out_edge;
};

}  // namespace phinfer

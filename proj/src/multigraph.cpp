#include "phinfer/multigraph.hpp"

#include <stdexcept>

namespace phinfer {

Multigraph::Multigraph(std::size_t node_count) : out_(node_count), in_(node_count) {}

EdgeId Multigraph::add_edge(NodeId tail, NodeId head, std::size_t multiplicity) {
  if (tail >= node_count() || head >= node_count()) throw std::invalid_argument("multigraph: unknown node");
  if (tail == head) throw std::invalid_argument("multigraph: self-loop");
  if (multiplicity == 0) throw std::invalid_argument("multigraph: zero multiplicity");
  if (find_edge(tail, head)) throw std::invalid_argument("multigraph: repeated edge");
  const EdgeId e = edges_.size();
  edges_.push_back({tail, head, multiplicity});
  out_[tail].push_back(e);
  in_[head].push_back(e);
  return e;
}

std::size_t Multigraph::out_multiplicity(NodeId v) const {
  std::size_t sum = 0;
  for (EdgeId e : out_[v]) sum += edges_[e].multiplicity;
  return sum;
}

std::size_t Multigraph::in_multiplicity(NodeId v) const {
  std::size_t sum = 0;
  for (EdgeId e : in_[v]) sum += edges_[e].multiplicity;
  return sum;
}

std::size_t Multigraph::total_multiplicity() const {
  std::size_t sum = 0;
  for (const Edge& e : edges_) sum += e.multiplicity;
  return sum;
}

std::optional<EdgeId> Multigraph::find_edge(NodeId tail, NodeId head) const {
  for (EdgeId e : out_[tail]) {
    if (edges_[e].head == head) return e;
  }
  return std::nullopt;
}

void PrioritySet::add(const Multigraph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  if (edge.multiplicity != 1) throw std::invalid_argument("priority edge must have multiplicity 1");
  if (by_tail_.size() < g.node_count()) by_tail_.resize(g.node_count(), kNoEdge);
  if (by_tail_[edge.tail] != kNoEdge && by_tail_[edge.tail] != e) {
    throw std::invalid_argument("node already has a priority edge");
  }
  by_tail_[edge.tail] = e;
}

std::size_t PrioritySet::size() const {
  std::size_t n = 0;
  for (EdgeId e : by_tail_) n += e != kNoEdge;
  return n;
}

std::vector<EdgeId> PrioritySet::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e : by_tail_) {
    if (e != kNoEdge) out.push_back(e);
  }
  return out;
}

}  // namespace phinfer

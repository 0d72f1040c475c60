#pragma once

#include <functional>
#include <optional>
#include <span>

#include <gmpxx.h>

#include "phinfer/multigraph.hpp"

namespace phinfer {

// Exact nonnegative counts (Eulerian-cycle and text counts overflow any
// fixed width).
using BigCount = mpz_class;

// Connected (over nodes touching an edge, plus r) with in/out multiplicity
// balanced at every node.
bool check_eulerian(const Multigraph& g, NodeId r);

// Sink-oriented spanning tree of g minus `excluded`, spanning every node
// that touches a remaining edge (and the sink). Built by reverse breadth-first
// search from the sink taking in-edges in id order. nullopt when some such
// node cannot reach the sink.
std::optional<OrientedTree> oriented_spanning_tree(const Multigraph& g, NodeId sink,
                                                   std::span<const EdgeId> excluded = {});

// Drops a node's priority mark when the priority edge is its only out-edge.
PrioritySet demote_sole_priorities(const Multigraph& g, PrioritySet f);

// An r-Eulerian cycle in which each node's priority edge is its first
// departure; nullopt when none exists. Linear time. The walk prefers the
// unused priority edge, then the lowest-id unused non-tree edge, and takes
// the spanning-tree edge last.
std::optional<EulerCycle> solve_ecp(const Multigraph& g, const PrioritySet& f, NodeId r);

// Number of r-Eulerian cycles respecting f, parallel copies of an edge being
// indistinguishable (BEST-style formula with a Bareiss determinant for the
// weighted arborescence sum). 0 when none exists; 1 for an edgeless graph.
BigCount count_ecp(const Multigraph& g, const PrioritySet& f, NodeId r);

// Sum over sink-oriented spanning trees of g minus `excluded` of the product
// of edge multiplicities (matrix-tree theorem, exact).
BigCount oriented_tree_weight(const Multigraph& g, NodeId sink, std::span<const EdgeId> excluded = {});

// Calls `visit` once per r-Eulerian cycle respecting f, in a deterministic
// order (spanning tree, then per-node departure orders). `visit` returns
// false to stop early. Returns the number of cycles visited.
using CycleVisitor = std::function<bool(const EulerCycle&)>;
std::size_t enumerate_ecp(const Multigraph& g, const PrioritySet& f, NodeId r, const CycleVisitor& visit);

// Calls `visit` once per sink-oriented spanning tree of g minus `excluded`
// (Gabow-Myers style backtracking over the reversed graph). Returns the
// number of trees visited.
using TreeVisitor = std::function<bool(const OrientedTree&)>;
std::size_t enumerate_oriented_trees(const Multigraph& g, NodeId sink, std::span<const EdgeId> excluded,
                                     const TreeVisitor& visit);

}  // namespace phinfer

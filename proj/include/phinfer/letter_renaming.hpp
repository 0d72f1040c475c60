#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phinfer/ecp.hpp"
#include "phinfer/heap_sketch.hpp"

namespace phinfer {

// Renamings of edge letters between labeled trees whose sibling labels are
// distinct and whose every label also sits on a root edge (true of position
// heaps and of sketches labeled through their links). Letters are identified
// with root edges: letter j is the label of the j-th child of the root.

// Node map x -> y under some bijective renaming of x's letters that turns x
// into y exactly, or nullopt. The tree maps `children(root)[j]` of x onto the
// root child of y carrying the renamed letter.
std::optional<std::vector<NodeId>> find_renaming(const HeapSketch& x, const HeapSketch& y);

// The renamings of a tree onto itself, as permutations of its root edges.
struct RootSymmetry {
  // Group order.
  BigCount order = 1;
  // orbits[j]: images of root edge j under the renamings that fix root
  // edges 0..j-1 (always contains j).
  std::vector<std::vector<std::size_t>> orbits;

  // For each root edge y, the edges j < y whose letters must be smaller than
  // y's in an orbit-minimal assignment.
  [[nodiscard]] std::vector<std::vector<std::size_t>> must_exceed() const;
  // Is `rank` (one alphabet rank per root edge) the lexicographically
  // smallest assignment among its images under the group?
  [[nodiscard]] bool is_orbit_minimal(std::span<const std::size_t> rank) const;
};

// Throws std::invalid_argument unless the preconditions above hold.
RootSymmetry root_symmetry(const HeapSketch& labeled);

}  // namespace phinfer

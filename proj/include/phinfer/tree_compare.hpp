#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "phinfer/heap_sketch.hpp"

namespace phinfer {

class UnlabeledInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Label-respecting isomorphism x -> y for trees whose sibling labels are
// pairwise distinct (the map is then unique). Returns nullopt when the trees
// differ or either has a repeated sibling label. Linear time.
std::optional<std::vector<NodeId>> match_labeled(const HeapSketch& x, const HeapSketch& y);

// With respect_numbers: identical numbered, labeled trees. Otherwise:
// isomorphic as edge-labeled rooted trees. Throws UnlabeledInput.
bool tree_equal(const HeapSketch& x, const HeapSketch& y, bool respect_numbers);

// Same parent number for every node number; labels are ignored. Both
// sketches must be numbered (throws std::invalid_argument otherwise).
bool same_numbered_shape(const HeapSketch& x, const HeapSketch& y);

}  // namespace phinfer

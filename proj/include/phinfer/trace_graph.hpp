#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phinfer/heap_sketch.hpp"
#include "phinfer/multigraph.hpp"

namespace phinfer {

enum class TraceFailure {
  kNoSuchChild,       // S(parent) has no child with the needed label
  kRepeatedLabel,     // two sibling edges share a label
  kNegativeSigma,     // edge multiplicity equation has a negative solution
  kLinkInconsistent,  // given links are not suffix links of any labeling
};

class TraceError : public std::runtime_error {
 public:
  TraceError(TraceFailure kind, NodeId node, const std::string& what)
      : std::runtime_error(what), kind_(kind), node_(node) {}
  [[nodiscard]] TraceFailure kind() const noexcept { return kind_; }
  [[nodiscard]] NodeId node() const noexcept { return node_; }

 private:
  TraceFailure kind_;
  NodeId node_;
};

// Occurrence count of each tree edge in a trace cycle, indexed by the edge's
// head node (entry 0, the root, is unused and zero).
struct SigmaMap {
  std::vector<std::int64_t> value;

  [[nodiscard]] std::int64_t operator[](NodeId head) const { return value[head]; }
  [[nodiscard]] std::int64_t total() const;
};

struct TraceArc {
  enum class Kind { kEdge, kLink };
  Kind kind;
  // For kEdge: the tree edge's head (= sketch edge id). For kLink: the tail.
  NodeId node;
  char label = '\0';
};

// Tree edges with positive sigma (multiplicity sigma) plus unit suffix-link
// arcs over the sketch's nodes. arcs[e] describes graph edge e.
struct TraceGraph {
  Multigraph graph;
  PrioritySet priority;
  NodeId root = HeapSketch::root();
  std::vector<TraceArc> arcs;
};

// Suffix links implied by the labels: depth-1 nodes link to the root, and a
// node entered by label c links to the c-child of its parent's link target.
// Throws TraceError (kRepeatedLabel, kNoSuchChild).
SuffixLinkMap reconstruct_suffix_links(const HeapSketch& s);

// sigma(u->v) = 1 - |{w : S(w) = v}| + sum of sigma over v's out-edges,
// evaluated bottom-up. Throws TraceError(kNegativeSigma).
SigmaMap compute_sigma(const HeapSketch& s, const SuffixLinkMap& links);

// Tree edges are added per node in label order, then one link arc per
// non-root node. A link is a priority arc iff its tail has an outgoing tree
// edge with positive sigma.
TraceGraph build_trace_graph(const HeapSketch& s, const SuffixLinkMap& links, const SigmaMap& sigma);

struct CycleReading {
  std::string text;
  // Sketch node -> position: root 0, tail of the i-th link occurrence i.
  std::vector<std::size_t> numbering;
};

// Spells the text along a legitimate cycle: the i-th tree-edge occurrence
// contributes the i-th letter.
CycleReading read_text_from_cycle(const TraceGraph& g, const EulerCycle& cycle);

// Labels every edge of a link-annotated sketch from letters chosen for the
// root's edges (`root_letters[i]` labels the i-th child of the root): the
// edge u->v copies the label of S(u)->S(v). Validates that the links are
// total on non-root nodes, undefined at the root, drop depth by one, and map
// edges onto edges. Throws TraceError(kLinkInconsistent) or
// std::invalid_argument for a bad letter assignment.
HeapSketch propagate_labels(const HeapSketch& s, std::span<const char> root_letters);

}  // namespace phinfer

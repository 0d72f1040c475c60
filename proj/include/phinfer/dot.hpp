#pragma once

#include <string>

#include "phinfer/heap_sketch.hpp"
#include "phinfer/position_heap.hpp"
#include "phinfer/trace_graph.hpp"

namespace phinfer {

// Graphviz renderings. Tree edges are solid and carry their letter, suffix
// links are dashed, nodes show their number when one is known. Output is
// deterministic (node order, then edge order).
std::string export_dot(const HeapSketch& s);
std::string export_dot(const HeapWithLinks& phs);

// Trace graph over the sketch's nodes: edge multiplicities above one are
// annotated as "x<k>", priority links are drawn bold.
std::string export_dot(const TraceGraph& g, const HeapSketch& s);

}  // namespace phinfer

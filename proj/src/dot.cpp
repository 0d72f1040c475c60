#include "phinfer/dot.hpp"

#include <sstream>

namespace phinfer {
namespace {

std::string quoted(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_nodes(std::ostringstream& out, const HeapSketch& s) {
  for (NodeId v = 0; v < s.node_count(); ++v) {
    const std::string caption = s.numbered() ? std::to_string(s.number(v)) : "";
    out << "  n" << v << " [label=" << quoted(caption) << ", tooltip=" << quoted(s.id(v)) << "];\n";
  }
}

}  // namespace

std::string export_dot(const HeapSketch& s) {
  std::ostringstream out;
  out << "digraph heap {\n  node [shape=circle];\n";
  write_nodes(out, s);
  for (NodeId v = 1; v < s.node_count(); ++v) {
    out << "  n" << s.parent(v) << " -> n" << v;
    if (s.label(v)) out << " [label=" << quoted(std::string(1, *s.label(v))) << "]";
    out << ";\n";
  }
  if (s.has_links()) {
    for (NodeId v = 0; v < s.node_count(); ++v) {
      if (s.links().defined(v)) {
        out << "  n" << v << " -> n" << s.links()[v] << " [style=dashed, constraint=false];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const HeapWithLinks& phs) { return export_dot(to_sketch(phs)); }

std::string export_dot(const TraceGraph& g, const HeapSketch& s) {
  std::ostringstream out;
  out << "digraph trace {\n  node [shape=circle];\n";
  write_nodes(out, s);
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& edge = g.graph.edge(e);
    const TraceArc& arc = g.arcs[e];
    out << "  n" << edge.tail << " -> n" << edge.head;
    if (arc.kind == TraceArc::Kind::kEdge) {
      std::string caption(1, arc.label);
      if (edge.multiplicity > 1) caption += " x" + std::to_string(edge.multiplicity);
      out << " [label=" << quoted(caption) << "]";
    } else if (g.priority.contains(g.graph, e)) {
      out << " [style=dashed, penwidth=2, constraint=false]";
    } else {
      out << " [style=dashed, constraint=false]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace phinfer

#include "phinfer/trace_graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "phinfer/alphabet.hpp"

namespace phinfer {
namespace {

// Children of every node sorted by label, with repeated labels rejected.
class LabelIndex {
 public:
  explicit LabelIndex(const HeapSketch& s) : sorted_(s.node_count()) {
    for (NodeId v = 0; v < s.node_count(); ++v) {
      auto& kids = sorted_[v];
      kids.reserve(s.children(v).size());
      for (NodeId c : s.children(v)) kids.push_back({*s.label(c), c});
      std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 1; i < kids.size(); ++i) {
        if (kids[i - 1].first == kids[i].first) {
          throw TraceError(TraceFailure::kRepeatedLabel, kids[i].second,
                           "sibling edges share the label '" + std::string(1, kids[i].first) + "'");
        }
      }
    }
  }

  [[nodiscard]] NodeId child(NodeId v, char letter) const {
    const auto& kids = sorted_[v];
    const auto it = std::lower_bound(kids.begin(), kids.end(), letter,
                                     [](const auto& kid, char c) { return kid.first < c; });
    return it != kids.end() && it->first == letter ? it->second : kNoNode;
  }

  [[nodiscard]] const std::vector<std::pair<char, NodeId>>& children(NodeId v) const { return sorted_[v]; }

 private:
  std::vector<std::vector<std::pair<char, NodeId>>> sorted_;
};

void require_labeled(const HeapSketch& s) {
  if (!s.labeled()) throw std::invalid_argument("trace graph needs a labeled sketch");
}

}  // namespace

std::int64_t SigmaMap::total() const { return std::accumulate(value.begin(), value.end(), std::int64_t{0}); }

SuffixLinkMap reconstruct_suffix_links(const HeapSketch& s) {
  require_labeled(s);
  const LabelIndex index(s);
  SuffixLinkMap links(s.node_count());
  for (NodeId v : s.bfs_order()) {
    if (v == HeapSketch::root()) continue;
    const NodeId p = s.parent(v);
    if (p == HeapSketch::root()) {
      links[v] = HeapSketch::root();
      continue;
    }
    const NodeId target = index.child(links[p], *s.label(v));
    if (target == kNoNode) {
      throw TraceError(TraceFailure::kNoSuchChild, v,
                       "no suffix link for node '" + s.id(v) + "': missing '" + std::string(1, *s.label(v)) +
                           "' child under '" + s.id(links[p]) + "'");
    }
    links[v] = target;
  }
  return links;
}

SigmaMap compute_sigma(const HeapSketch& s, const SuffixLinkMap& links) {
  std::vector<std::int64_t> incoming(s.node_count(), 0);
  for (NodeId v = 1; v < s.node_count(); ++v) {
    if (!links.defined(v)) throw std::invalid_argument("compute_sigma: link map is not total");
    ++incoming[links[v]];
  }
  SigmaMap sigma{std::vector<std::int64_t>(s.node_count(), 0)};
  const auto order = s.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (v == HeapSketch::root()) continue;
    std::int64_t value = 1 - incoming[v];
    for (NodeId c : s.children(v)) value += sigma.value[c];
    if (value < 0) {
      throw TraceError(TraceFailure::kNegativeSigma, v,
                       "edge into '" + s.id(v) + "' would occur " + std::to_string(value) + " times");
    }
    sigma.value[v] = value;
  }
  return sigma;
}

TraceGraph build_trace_graph(const HeapSketch& s, const SuffixLinkMap& links, const SigmaMap& sigma) {
  require_labeled(s);
  const LabelIndex index(s);
  TraceGraph g{Multigraph(s.node_count()), {}, HeapSketch::root(), {}};
  std::vector<bool> has_edge_out(s.node_count(), false);
  for (NodeId u = 0; u < s.node_count(); ++u) {
    for (const auto& [letter, v] : index.children(u)) {
      if (sigma[v] < 0) throw TraceError(TraceFailure::kNegativeSigma, v, "negative sigma");
      if (sigma[v] == 0) continue;
      g.graph.add_edge(u, v, static_cast<std::size_t>(sigma[v]));
      g.arcs.push_back({TraceArc::Kind::kEdge, v, letter});
      has_edge_out[u] = true;
    }
  }
  std::vector<EdgeId> link_arc(s.node_count(), kNoEdge);
  for (NodeId v = 1; v < s.node_count(); ++v) {
    link_arc[v] = g.graph.add_edge(v, links[v], 1);
    g.arcs.push_back({TraceArc::Kind::kLink, v, '\0'});
  }
  g.priority = PrioritySet(g.graph);
  for (NodeId v = 1; v < s.node_count(); ++v) {
    if (has_edge_out[v]) g.priority.add(g.graph, link_arc[v]);
  }
  return g;
}

CycleReading read_text_from_cycle(const TraceGraph& g, const EulerCycle& cycle) {
  CycleReading out;
  out.numbering.assign(g.graph.node_count(), 0);
  std::size_t links_seen = 0;
  for (EdgeId e : cycle.arcs) {
    const TraceArc& arc = g.arcs[e];
    if (arc.kind == TraceArc::Kind::kEdge) {
      out.text.push_back(arc.label);
    } else {
      out.numbering[arc.node] = ++links_seen;
    }
  }
  out.numbering[g.root] = 0;
  return out;
}

HeapSketch propagate_labels(const HeapSketch& s, std::span<const char> root_letters) {
  const auto& root_kids = s.children(HeapSketch::root());
  if (root_letters.size() != root_kids.size()) {
    throw std::invalid_argument("propagate_labels: need one letter per root edge");
  }
  std::array<bool, 256> used{};
  for (char c : root_letters) {
    if (!Alphabet::is_letter(c)) throw std::invalid_argument("propagate_labels: bad letter");
    auto& slot = used[static_cast<unsigned char>(c)];
    if (slot) throw std::invalid_argument("propagate_labels: root letters must be distinct");
    slot = true;
  }

  auto inconsistent = [&](NodeId v, const std::string& why) {
    return TraceError(TraceFailure::kLinkInconsistent, v, "link of '" + s.id(v) + "' " + why);
  };
  if (!s.has_links()) throw TraceError(TraceFailure::kLinkInconsistent, HeapSketch::root(), "no links given");
  const SuffixLinkMap& links = s.links();
  if (links.defined(HeapSketch::root())) throw inconsistent(HeapSketch::root(), "must not exist at the root");
  for (NodeId v = 1; v < s.node_count(); ++v) {
    if (!links.defined(v)) throw inconsistent(v, "is missing");
    if (s.depth(links[v]) + 1 != s.depth(v)) throw inconsistent(v, "does not drop depth by one");
  }

  HeapSketch out = s;
  for (std::size_t i = 0; i < root_kids.size(); ++i) out.set_label(root_kids[i], root_letters[i]);
  for (NodeId v : s.bfs_order()) {
    const NodeId u = s.parent(v);
    if (v == HeapSketch::root() || u == HeapSketch::root()) continue;
    const NodeId lv = links[v];
    if (s.parent(lv) != links[u]) throw inconsistent(v, "does not follow the parent's link");
    out.set_label(v, out.label(lv));
  }
  out.mark_labeled(true);
  return out;
}

}  // namespace phinfer

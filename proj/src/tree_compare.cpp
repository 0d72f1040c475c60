#include "phinfer/tree_compare.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace phinfer {
namespace {

std::vector<NodeId> children_by_label(const HeapSketch& s, NodeId v) {
  std::vector<NodeId> kids = s.children(v);
  std::sort(kids.begin(), kids.end(),
            [&](NodeId a, NodeId b) { return *s.label(a) < *s.label(b); });
  return kids;
}

bool has_repeated_sibling_label(const HeapSketch& s, const std::vector<NodeId>& sorted_kids) {
  for (std::size_t i = 1; i < sorted_kids.size(); ++i) {
    if (s.label(sorted_kids[i - 1]) == s.label(sorted_kids[i])) return true;
  }
  return false;
}

// Canonical codes for labeled unordered trees (repeated sibling labels allowed).
class CanonicalCoder {
 public:
  int root_code(const HeapSketch& s) {
    const auto order = s.bfs_order();
    std::vector<int> code(s.node_count(), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId v = *it;
      std::vector<int> kids;
      kids.reserve(s.children(v).size());
      for (NodeId c : s.children(v)) kids.push_back(code[c]);
      std::sort(kids.begin(), kids.end());
      const char l = v == HeapSketch::root() ? '\0' : *s.label(v);
      auto [pos, fresh] = table_.try_emplace({l, std::move(kids)}, static_cast<int>(table_.size()));
      code[v] = pos->second;
    }
    return code[HeapSketch::root()];
  }

 private:
  std::map<std::pair<char, std::vector<int>>, int> table_;
};

void require_labels(const HeapSketch& x, const HeapSketch& y) {
  if (!x.labeled() || !y.labeled()) throw UnlabeledInput("tree comparison needs labeled trees");
}

}  // namespace

std::optional<std::vector<NodeId>> match_labeled(const HeapSketch& x, const HeapSketch& y) {
  require_labels(x, y);
  if (x.node_count() != y.node_count()) return std::nullopt;
  std::vector<NodeId> map(x.node_count(), kNoNode);
  std::vector<std::pair<NodeId, NodeId>> work{{HeapSketch::root(), HeapSketch::root()}};
  map[HeapSketch::root()] = HeapSketch::root();
  while (!work.empty()) {
    const auto [u, w] = work.back();
    work.pop_back();
    if (x.children(u).size() != y.children(w).size()) return std::nullopt;
    const auto xs = children_by_label(x, u);
    const auto ys = children_by_label(y, w);
    if (has_repeated_sibling_label(x, xs) || has_repeated_sibling_label(y, ys)) return std::nullopt;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (x.label(xs[i]) != y.label(ys[i])) return std::nullopt;
      map[xs[i]] = ys[i];
      work.emplace_back(xs[i], ys[i]);
    }
  }
  return map;
}

bool tree_equal(const HeapSketch& x, const HeapSketch& y, bool respect_numbers) {
  require_labels(x, y);
  if (x.node_count() != y.node_count()) return false;
  if (respect_numbers) {
    if (!x.numbered() || !y.numbered()) {
      throw std::invalid_argument("tree_equal: numbered comparison of unnumbered tree");
    }
    const auto y_node = y.nodes_by_number();
    for (NodeId v = 1; v < x.node_count(); ++v) {
      const NodeId w = y_node[x.number(v)];
      if (w == HeapSketch::root()) return false;
      if (x.number(x.parent(v)) != y.number(y.parent(w))) return false;
      if (x.label(v) != y.label(w)) return false;
    }
    return true;
  }
  if (match_labeled(x, y)) return true;
  // Distinct sibling labels make the matching exact; only trees with a
  // repeated sibling label need the general canonical form.
  CanonicalCoder coder;
  return coder.root_code(x) == coder.root_code(y);
}

bool same_numbered_shape(const HeapSketch& x, const HeapSketch& y) {
  if (!x.numbered() || !y.numbered()) {
    throw std::invalid_argument("same_numbered_shape: both trees must be numbered");
  }
  if (x.node_count() != y.node_count()) return false;
  const auto y_node = y.nodes_by_number();
  for (NodeId v = 1; v < x.node_count(); ++v) {
    const NodeId w = y_node[x.number(v)];
    if (w == HeapSketch::root()) return false;
    if (x.number(x.parent(v)) != y.number(y.parent(w))) return false;
  }
  return true;
}

}  // namespace phinfer

#include "phinfer/position_heap.hpp"

#include <algorithm>

namespace phinfer {

NodeId PositionHeap::child(NodeId v, char letter) const {
  for (const Child& c : children(v)) {
    if (c.letter == letter) return c.node;
  }
  return kNoNode;
}

bool is_valid_text(std::string_view text) noexcept {
  if (text.empty()) return true;
  return text.find(text.back()) == text.size() - 1;
}

struct HeapBuilder {
  PositionHeap heap;
  // Children as sibling chains while building; packed by finish().
  std::vector<NodeId> first_child;
  std::vector<NodeId> next_sibling;
  // Lazily computed suffix links; targets are resolved only once they exist.
  std::vector<NodeId> link;
  std::vector<NodeId> pending;

  explicit HeapBuilder(const Alphabet& alphabet, std::size_t n) : heap(alphabet) {
    heap.parent_.reserve(n + 1);
    heap.label_.reserve(n + 1);
    heap.depth_.reserve(n + 1);
    first_child.reserve(n + 1);
    next_sibling.reserve(n + 1);
    link.reserve(n + 1);
    heap.parent_.push_back(kNoNode);
    heap.label_.push_back('\0');
    heap.depth_.push_back(0);
    first_child.push_back(kNoNode);
    next_sibling.push_back(kNoNode);
    link.push_back(kNoNode);
  }

  NodeId child(NodeId v, char letter) const {
    for (NodeId c = first_child[v]; c != kNoNode; c = next_sibling[c]) {
      if (heap.label_[c] == letter) return c;
    }
    return kNoNode;
  }

  NodeId add_child(NodeId parent, char letter) {
    const NodeId v = heap.parent_.size();
    heap.parent_.push_back(parent);
    heap.label_.push_back(letter);
    heap.depth_.push_back(heap.depth_[parent] + 1);
    first_child.push_back(kNoNode);
    next_sibling.push_back(first_child[parent]);
    first_child[parent] = v;
    link.push_back(kNoNode);
    return v;
  }

  // S(v) = child of S(parent(v)) by label(v); S of depth-1 nodes is the root.
  NodeId resolve_link(NodeId v) {
    if (v == 0) return kNoNode;
    pending.clear();
    NodeId u = v;
    while (link[u] == kNoNode && heap.depth_[u] > 1) {
      pending.push_back(u);
      u = heap.parent_[u];
    }
    if (link[u] == kNoNode) link[u] = 0;
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      const NodeId w = *it;
      const NodeId target = child(link[heap.parent_[w]], heap.label_[w]);
      if (target == kNoNode) throw std::logic_error("position heap: unresolved suffix link");
      link[w] = target;
    }
    return link[v];
  }

  // Packs the children of every node contiguously, in alphabet order.
  void finish(const Alphabet& alphabet) {
    const std::size_t count = heap.parent_.size();
    heap.child_begin_.assign(count + 1, 0);
    for (NodeId v = 1; v < count; ++v) ++heap.child_begin_[heap.parent_[v] + 1];
    for (std::size_t v = 0; v < count; ++v) heap.child_begin_[v + 1] += heap.child_begin_[v];

    std::vector<std::size_t> by_rank(alphabet.size() + 1, 0);
    for (NodeId v = 1; v < count; ++v) ++by_rank[alphabet.rank(heap.label_[v]) + 1];
    for (std::size_t r = 0; r < alphabet.size(); ++r) by_rank[r + 1] += by_rank[r];
    std::vector<NodeId> order(count - 1);
    for (NodeId v = 1; v < count; ++v) order[by_rank[alphabet.rank(heap.label_[v])]++] = v;

    std::vector<std::size_t> fill(heap.child_begin_.begin(), heap.child_begin_.end() - 1);
    heap.child_list_.resize(count - 1);
    for (NodeId v : order) heap.child_list_[fill[heap.parent_[v]]++] = {heap.label_[v], v};
  }
};

HeapWithLinks build_position_heap(std::string_view text, const Alphabet& alphabet) {
  for (char c : text) {
    if (!alphabet.contains(c)) {
      throw UnknownLetter(std::string("letter '") + c + "' is not in the alphabet");
    }
  }
  if (!is_valid_text(text)) {
    throw InvalidText("last letter of the text is not unique");
  }

  const std::size_t n = text.size();
  HeapBuilder b(alphabet, n);

  // h_{i+1} extends h_i[2:], so the walk for node i+1 resumes at
  // S(parent(i)) and `pos` (next text letter to match) never moves back.
  NodeId start = 0;
  std::size_t pos = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    NodeId u = start;
    while (pos < n) {
      const NodeId next = b.child(u, text[pos]);
      if (next == kNoNode) break;
      u = next;
      ++pos;
    }
    if (pos >= n) throw std::logic_error("position heap: ran off the text");
    b.add_child(u, text[pos]);
    if (u == 0) {
      start = 0;
      pos = i;
    } else {
      start = b.resolve_link(u);
    }
  }

  SuffixLinkMap links(n + 1);
  for (NodeId v = 1; v <= n; ++v) links[v] = b.resolve_link(v);

  b.finish(alphabet);
  return {std::move(b.heap), std::move(links)};
}

HeapWithLinks build_position_heap(std::string_view text) {
  if (text.empty()) return build_position_heap(text, Alphabet("a"));
  return build_position_heap(text, Alphabet::of_text(text));
}

std::string path_label(const PositionHeap& heap, NodeId v) {
  std::string out;
  out.reserve(heap.depth(v));
  for (; v != 0; v = heap.parent(v)) out.push_back(heap.label(v));
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace phinfer

#include "phinfer/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "phinfer/position_heap.hpp"
#include "phinfer/tree_compare.hpp"

namespace phinfer {
namespace {

// PHS(T) matches an unlabeled, unnumbered sketch with links: some bijection
// of the root's children fixes a node map top-down (a heap node's children
// have pairwise distinct links), which must carry links onto links.
bool matches_with_links(const HeapSketch& s, const HeapWithLinks& phs) {
  const PositionHeap& heap = phs.heap;
  const SuffixLinkMap& links = s.links();
  if (heap.node_count() != s.node_count()) return false;
  for (NodeId v = 1; v < s.node_count(); ++v) {
    if (!links.defined(v) || s.depth(links[v]) + 1 != s.depth(v)) return false;
  }
  if (links.defined(HeapSketch::root())) return false;

  const auto& sketch_kids = s.children(HeapSketch::root());
  const auto heap_kids = heap.children(0);
  if (sketch_kids.size() != heap_kids.size()) return false;
  const auto order = s.bfs_order();

  std::vector<std::size_t> perm(heap_kids.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<NodeId> map(s.node_count());
  std::vector<bool> used(heap.node_count());
  do {
    std::fill(map.begin(), map.end(), kNoNode);
    std::fill(used.begin(), used.end(), false);
    map[HeapSketch::root()] = 0;
    used[0] = true;
    for (std::size_t i = 0; i < sketch_kids.size(); ++i) {
      map[sketch_kids[i]] = heap_kids[perm[i]].node;
      used[heap_kids[perm[i]].node] = true;
    }
    bool ok = true;
    for (NodeId v : order) {
      if (v == HeapSketch::root() || s.parent(v) == HeapSketch::root()) continue;
      const NodeId image_parent = map[s.parent(v)];
      const NodeId want_link = map[links[v]];
      NodeId image = kNoNode;
      for (const auto& c : heap.children(image_parent)) {
        if (phs.links[c.node] == want_link) image = c.node;
      }
      if (image == kNoNode || used[image]) {
        ok = false;
        break;
      }
      used[image] = true;
      map[v] = image;
    }
    if (!ok) continue;
    for (NodeId v = 0; v < s.node_count() && ok; ++v) {
      if (heap.children(map[v]).size() != s.children(v).size()) ok = false;
      if (v != HeapSketch::root() && map[links[v]] != phs.links[map[v]]) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool matches(const HeapSketch& s, ProblemKind kind, const HeapWithLinks& phs) {
  switch (kind) {
    case ProblemKind::kNumberedLabeled:
      return tree_equal(to_sketch(phs, {.numbers = true, .labels = true, .links = false}), s, true);
    case ProblemKind::kNumbered:
      return same_numbered_shape(to_sketch(phs, {.numbers = true, .labels = false, .links = false}), s);
    case ProblemKind::kLabeled:
      return tree_equal(to_sketch(phs, {.numbers = false, .labels = true, .links = false}), s, false);
    case ProblemKind::kLinksOnly:
      return matches_with_links(s, phs);
  }
  return false;
}

}  // namespace

std::vector<std::string> brute_force_oracle(const HeapSketch& s, ProblemKind kind, const Alphabet& alphabet,
                                            std::size_t max_len) {
  const std::size_t n = s.node_count() - 1;
  if (n > max_len) {
    throw CapExceeded("text length " + std::to_string(n) + " exceeds the oracle cap " + std::to_string(max_len));
  }
  if (kind == ProblemKind::kLinksOnly && !s.has_links()) throw std::invalid_argument("oracle: sketch has no links");
  std::vector<std::string> found;
  if (n == 0) {
    if (matches(s, kind, build_position_heap(""))) found.emplace_back();
    return found;
  }

  const std::size_t sigma = alphabet.size();
  std::string text(n, '\0');
  std::vector<std::size_t> digit(n - 1);
  for (std::size_t last = 0; last < sigma; ++last) {
    std::string others;
    for (std::size_t j = 0; j < sigma; ++j) {
      if (j != last) others.push_back(alphabet[j]);
    }
    if (others.empty() && n > 1) continue;
    text[n - 1] = alphabet[last];
    std::fill(digit.begin(), digit.end(), 0);
    while (true) {
      for (std::size_t i = 0; i + 1 < n; ++i) text[i] = others[digit[i]];
      if (matches(s, kind, build_position_heap(text, alphabet))) found.push_back(text);
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == others.size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace phinfer

#include "phinfer/letter_renaming.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace phinfer {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// A labeled tree with letters replaced by root-edge indices.
struct LetterTree {
  const HeapSketch* s = nullptr;
  std::vector<std::size_t> letter;
  std::vector<std::vector<std::pair<std::size_t, NodeId>>> kids;
  std::vector<std::size_t> size;
  std::vector<std::vector<NodeId>> by_letter;
  std::size_t k = 0;

  NodeId child(NodeId v, std::size_t c) const {
    const auto& row = kids[v];
    const auto it = std::lower_bound(row.begin(), row.end(), std::pair{c, NodeId{0}});
    return it != row.end() && it->first == c ? it->second : kNoNode;
  }
};

std::optional<LetterTree> letter_tree(const HeapSketch& s) {
  if (!s.labeled()) return std::nullopt;
  LetterTree t;
  t.s = &s;
  const auto& top = s.children(HeapSketch::root());
  t.k = top.size();
  std::array<std::size_t, 256> index;
  index.fill(kNone);
  for (std::size_t j = 0; j < t.k; ++j) {
    auto& slot = index[static_cast<unsigned char>(*s.label(top[j]))];
    if (slot != kNone) return std::nullopt;
    slot = j;
  }
  const std::size_t n = s.node_count();
  t.letter.assign(n, kNone);
  t.kids.resize(n);
  t.size.assign(n, 1);
  t.by_letter.resize(t.k);
  for (NodeId v = 1; v < n; ++v) {
    const std::size_t c = index[static_cast<unsigned char>(*s.label(v))];
    if (c == kNone) return std::nullopt;
    t.letter[v] = c;
    t.kids[s.parent(v)].emplace_back(c, v);
    t.by_letter[c].push_back(v);
  }
  for (auto& row : t.kids) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end(), [](const auto& a, const auto& b) {
          return a.first == b.first;
        }) != row.end()) {
      return std::nullopt;
    }
  }
  // Parents precede children, so a reverse scan accumulates subtree sizes.
  for (NodeId v = n; v-- > 1;) t.size[s.parent(v)] += t.size[v];
  return t;
}

// Per letter: the sorted (depth, subtree size) pairs of its edges, interned
// so that letters of x and y can only match when their profiles agree.
void assign_profiles(const LetterTree& x, const LetterTree& y, std::vector<int>& px, std::vector<int>& py) {
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, int> ids;
  auto profile = [&](const LetterTree& t, std::size_t c) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (NodeId v : t.by_letter[c]) p.emplace_back(t.s->depth(v), t.size[v]);
    std::sort(p.begin(), p.end());
    return ids.try_emplace(std::move(p), static_cast<int>(ids.size())).first->second;
  };
  px.resize(x.k);
  py.resize(y.k);
  for (std::size_t c = 0; c < x.k; ++c) px[c] = profile(x, c);
  for (std::size_t c = 0; c < y.k; ++c) py[c] = profile(y, c);
}

// Backtracking over letter images; each assignment maps every node whose
// root path is fully assigned and fails as soon as an image is missing.
class Matcher {
 public:
  struct Mark {
    std::size_t nodes;
    std::size_t letters;
  };

  Matcher(const LetterTree& x, const LetterTree& y)
      : x_(x), y_(y), pi_(x.k, kNone), used_(y.k, false), img_(x.s->node_count(), kNoNode) {
    assign_profiles(x, y, px_, py_);
    img_[HeapSketch::root()] = HeapSketch::root();
  }

  Mark mark() const { return {node_trail_.size(), letter_trail_.size()}; }

  void undo(Mark m) {
    while (node_trail_.size() > m.nodes) {
      img_[node_trail_.back()] = kNoNode;
      node_trail_.pop_back();
    }
    while (letter_trail_.size() > m.letters) {
      const std::size_t c = letter_trail_.back();
      used_[pi_[c]] = false;
      pi_[c] = kNone;
      letter_trail_.pop_back();
    }
  }

  bool compatible(std::size_t c, std::size_t d) const { return !used_[d] && px_[c] == py_[d]; }

  bool assign(std::size_t c, std::size_t d) {
    if (!compatible(c, d)) return false;
    pi_[c] = d;
    used_[d] = true;
    letter_trail_.push_back(c);
    for (NodeId v : x_.by_letter[c]) {
      if (img_[v] == kNoNode && img_[x_.s->parent(v)] != kNoNode && !map_subtree(v)) return false;
    }
    return true;
  }

  // Completes the assignment; on success the state is kept only if `keep`.
  bool extend(bool keep) {
    std::size_t c = 0;
    while (c < x_.k && pi_[c] != kNone) ++c;
    if (c == x_.k) return true;
    for (std::size_t d = 0; d < y_.k; ++d) {
      const Mark m = mark();
      if (assign(c, d) && extend(keep)) {
        if (!keep) undo(m);
        return true;
      }
      undo(m);
    }
    return false;
  }

  const std::vector<NodeId>& image() const { return img_; }

 private:
  bool map_subtree(NodeId v) {
    stack_.assign(1, v);
    while (!stack_.empty()) {
      const NodeId u = stack_.back();
      stack_.pop_back();
      const NodeId w = y_.child(img_[x_.s->parent(u)], pi_[x_.letter[u]]);
      if (w == kNoNode || x_.size[u] != y_.size[w]) return false;
      img_[u] = w;
      node_trail_.push_back(u);
      for (const auto& [c, kid] : x_.kids[u]) {
        if (pi_[c] != kNone) stack_.push_back(kid);
      }
    }
    return true;
  }

  const LetterTree& x_;
  const LetterTree& y_;
  std::vector<int> px_;
  std::vector<int> py_;
  std::vector<std::size_t> pi_;
  std::vector<bool> used_;
  std::vector<NodeId> img_;
  std::vector<NodeId> node_trail_;
  std::vector<std::size_t> letter_trail_;
  std::vector<NodeId> stack_;
};

}  // namespace

std::optional<std::vector<NodeId>> find_renaming(const HeapSketch& x, const HeapSketch& y) {
  if (x.node_count() != y.node_count()) return std::nullopt;
  const auto tx = letter_tree(x);
  const auto ty = letter_tree(y);
  if (!tx || !ty || tx->k != ty->k) return std::nullopt;
  Matcher m(*tx, *ty);
  if (!m.extend(true)) return std::nullopt;
  return m.image();
}

RootSymmetry root_symmetry(const HeapSketch& labeled) {
  const auto t = letter_tree(labeled);
  if (!t) throw std::invalid_argument("root_symmetry: labels must be distinct among siblings and sit on root edges");
  Matcher m(*t, *t);
  RootSymmetry out;
  out.orbits.resize(t->k);
  for (std::size_t j = 0; j < t->k; ++j) {
    for (std::size_t d = 0; d < t->k; ++d) {
      const auto mk = m.mark();
      if (m.assign(j, d) && m.extend(false)) out.orbits[j].push_back(d);
      m.undo(mk);
    }
    if (!m.assign(j, j)) throw std::logic_error("root_symmetry: identity rejected");
    out.order *= static_cast<unsigned long>(out.orbits[j].size());
  }
  return out;
}

std::vector<std::vector<std::size_t>> RootSymmetry::must_exceed() const {
  std::vector<std::vector<std::size_t>> out(orbits.size());
  for (std::size_t j = 0; j < orbits.size(); ++j) {
    for (std::size_t y : orbits[j]) {
      if (y != j) out[y].push_back(j);
    }
  }
  return out;
}

bool RootSymmetry::is_orbit_minimal(std::span<const std::size_t> rank) const {
  for (std::size_t j = 0; j < orbits.size(); ++j) {
    for (std::size_t y : orbits[j]) {
      if (rank[y] < rank[j]) return false;
    }
  }
  return true;
}

}  // namespace phinfer

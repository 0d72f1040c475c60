#include "phinfer/ecp.hpp"

#include <algorithm>
#include <stdexcept>

#include "phinfer/exact_det.hpp"

namespace phinfer {
namespace {

std::vector<bool> edge_mask(const Multigraph& g, std::span<const EdgeId> edges) {
  std::vector<bool> mask(g.edge_count(), false);
  for (EdgeId e : edges) mask.at(e) = true;
  return mask;
}

// Nodes touching an edge outside `excluded`, plus `extra`.
std::vector<bool> touched_nodes(const Multigraph& g, const std::vector<bool>& excluded, NodeId extra) {
  std::vector<bool> touched(g.node_count(), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (excluded[e]) continue;
    touched[g.edge(e).tail] = true;
    touched[g.edge(e).head] = true;
  }
  touched.at(extra) = true;
  return touched;
}

mpz_class factorial(std::size_t k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

// Explicit-stack Gabow-Myers enumeration of out-arborescences of the
// reversed graph, i.e. sink-oriented trees of g. The frontier is a doubly
// linked stack of g-edges (head in the tree, tail outside) restored exactly
// on backtrack; the bridge test uses the last emitted tree.
class TreeEnumerator {
 public:
  TreeEnumerator(const Multigraph& g, NodeId sink, std::span<const EdgeId> excluded)
      : g_(g),
        sink_(sink),
        excluded_(edge_mask(g, excluded)),
        deleted_(g.edge_count(), false),
        in_frontier_(g.edge_count(), false),
        prev_(g.edge_count(), kNoEdge),
        next_(g.edge_count(), kNoEdge),
        in_tree_(g.node_count(), false),
        choice_(g.node_count(), kNoEdge),
        pre_(g.node_count(), 0),
        post_(g.node_count(), 0) {
    const auto need = touched_nodes(g, excluded_, sink);
    target_ = static_cast<std::size_t>(std::count(need.begin(), need.end(), true));
  }

  std::size_t run(const TreeVisitor& visit) {
    if (!oriented_spanning_tree(g_, sink_, excluded_edges())) return 0;
    in_tree_[sink_] = true;
    tree_size_ = 1;
    push_into(sink_);

    struct Frame {
      std::size_t ff_begin;
      EdgeId edge = kNoEdge;
      std::size_t pushed = 0;
      std::size_t removed_begin = 0;
      bool returning = false;
    };
    std::vector<Frame> stack;
    stack.push_back({ff_.size()});
    std::size_t emitted = 0;

    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (!fr.returning) {
        if (tree_size_ == target_) {
          ++emitted;
          remember_last_tree();
          if (!visit(OrientedTree{sink_, choice_})) return emitted;
          stack.pop_back();
          continue;
        }
      } else {
        // Undo the extension by fr.edge, then delete it and test whether it
        // was a bridge of what remains.
        const NodeId k = g_.edge(fr.edge).tail;
        while (removed_.size() > fr.removed_begin) {
          relink(removed_.back());
          removed_.pop_back();
        }
        for (std::size_t i = 0; i < fr.pushed; ++i) unlink(top_);
        in_tree_[k] = false;
        choice_[k] = kNoEdge;
        --tree_size_;
        deleted_[fr.edge] = true;
        ff_.push_back(fr.edge);
        fr.returning = false;
        if (is_bridge(k)) {
          finish_frame(fr);
          stack.pop_back();
          continue;
        }
      }

      if (top_ == kNoEdge) {
        finish_frame(fr);
        stack.pop_back();
        continue;
      }
      const EdgeId e = top_;
      unlink(e);
      const NodeId k = g_.edge(e).tail;
      in_tree_[k] = true;
      choice_[k] = e;
      ++tree_size_;
      fr.edge = e;
      fr.pushed = push_into(k);
      fr.removed_begin = removed_.size();
      for (EdgeId x : g_.out_edges(k)) {
        if (in_frontier_[x]) {
          unlink(x);
          removed_.push_back(x);
        }
      }
      fr.returning = true;
      stack.push_back({ff_.size()});
    }
    return emitted;
  }

 private:
  std::vector<EdgeId> excluded_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < excluded_.size(); ++e) {
      if (excluded_[e]) out.push_back(e);
    }
    return out;
  }

  void link_top(EdgeId e) {
    prev_[e] = top_;
    next_[e] = kNoEdge;
    if (top_ != kNoEdge) next_[top_] = e;
    top_ = e;
    in_frontier_[e] = true;
  }

  void unlink(EdgeId e) {
    if (prev_[e] != kNoEdge) next_[prev_[e]] = next_[e];
    if (next_[e] != kNoEdge) {
      prev_[next_[e]] = prev_[e];
    } else {
      top_ = prev_[e];
    }
    in_frontier_[e] = false;
  }

  // Reinserts `e` between its recorded neighbours; valid in LIFO order.
  void relink(EdgeId e) {
    if (prev_[e] != kNoEdge) next_[prev_[e]] = e;
    if (next_[e] != kNoEdge) {
      prev_[next_[e]] = e;
    } else {
      top_ = e;
    }
    in_frontier_[e] = true;
  }

  // Pushes edges entering `k` whose tails are outside the tree.
  std::size_t push_into(NodeId k) {
    std::size_t pushed = 0;
    const auto in = g_.in_edges(k);
    for (auto it = in.rbegin(); it != in.rend(); ++it) {
      const EdgeId x = *it;
      if (excluded_[x] || deleted_[x] || in_tree_[g_.edge(x).tail]) continue;
      link_top(x);
      ++pushed;
    }
    return pushed;
  }

  void finish_frame(const auto& fr) {
    while (ff_.size() > fr.ff_begin) {
      const EdgeId e = ff_.back();
      ff_.pop_back();
      deleted_[e] = false;
      link_top(e);
    }
  }

  bool is_bridge(NodeId k) const {
    for (EdgeId x : g_.out_edges(k)) {
      if (excluded_[x] || deleted_[x]) continue;
      const NodeId w = g_.edge(x).head;
      const bool descendant = pre_[k] <= pre_[w] && post_[w] <= post_[k];
      if (!descendant) return false;
    }
    return true;
  }

  void remember_last_tree() {
    std::vector<std::vector<NodeId>> kids(g_.node_count());
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      if (choice_[v] != kNoEdge) kids[g_.edge(choice_[v]).head].push_back(v);
    }
    std::fill(pre_.begin(), pre_.end(), 0);
    std::fill(post_.begin(), post_.end(), 0);
    std::size_t clock = 1;
    std::vector<std::pair<NodeId, std::size_t>> dfs{{sink_, 0}};
    pre_[sink_] = clock++;
    while (!dfs.empty()) {
      auto& [v, i] = dfs.back();
      if (i < kids[v].size()) {
        const NodeId c = kids[v][i++];
        pre_[c] = clock++;
        dfs.emplace_back(c, 0);
      } else {
        post_[v] = clock++;
        dfs.pop_back();
      }
    }
  }

  const Multigraph& g_;
  NodeId sink_;
  std::vector<bool> excluded_;
  std::vector<bool> deleted_;
  std::vector<bool> in_frontier_;
  std::vector<EdgeId> prev_;
  std::vector<EdgeId> next_;
  EdgeId top_ = kNoEdge;
  std::vector<bool> in_tree_;
  std::vector<EdgeId> choice_;
  std::size_t tree_size_ = 0;
  std::size_t target_ = 0;
  std::vector<EdgeId> ff_;
  std::vector<EdgeId> removed_;
  std::vector<std::size_t> pre_;
  std::vector<std::size_t> post_;
};

}  // namespace

bool check_eulerian(const Multigraph& g, NodeId r) {
  if (r >= g.node_count()) return false;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.in_multiplicity(v) != g.out_multiplicity(v)) return false;
  }
  // Balanced graphs are strongly connected iff weakly connected.
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> work{r};
  seen[r] = true;
  while (!work.empty()) {
    const NodeId v = work.back();
    work.pop_back();
    auto visit = [&](NodeId w) {
      if (!seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
    };
    for (EdgeId e : g.out_edges(v)) visit(g.edge(e).head);
    for (EdgeId e : g.in_edges(v)) visit(g.edge(e).tail);
  }
  for (const Edge& e : g.edges()) {
    if (!seen[e.tail]) return false;
  }
  return true;
}

std::optional<OrientedTree> oriented_spanning_tree(const Multigraph& g, NodeId sink,
                                                   std::span<const EdgeId> excluded) {
  const auto skip = edge_mask(g, excluded);
  const auto need = touched_nodes(g, skip, sink);
  OrientedTree tree{sink, std::vector<EdgeId>(g.node_count(), kNoEdge)};
  std::vector<bool> reached(g.node_count(), false);
  std::vector<NodeId> queue{sink};
  reached[sink] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (EdgeId e : g.in_edges(queue[head])) {
      if (skip[e]) continue;
      const NodeId w = g.edge(e).tail;
      if (reached[w]) continue;
      reached[w] = true;
      tree.out_edge[w] = e;
      queue.push_back(w);
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (need[v] && !reached[v]) return std::nullopt;
  }
  return tree;
}

PrioritySet demote_sole_priorities(const Multigraph& g, PrioritySet f) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (f.at(v) != kNoEdge && g.out_edges(v).size() == 1) f.remove_at(v);
  }
  return f;
}

std::optional<EulerCycle> solve_ecp(const Multigraph& g, const PrioritySet& f, NodeId r) {
  if (r >= g.node_count()) return std::nullopt;
  if (g.edge_count() == 0) return EulerCycle{r, {}};
  if (!check_eulerian(g, r)) return std::nullopt;

  const PrioritySet prio = demote_sole_priorities(g, f);
  const auto excluded = prio.edges();
  const auto tree = oriented_spanning_tree(g, r, excluded);
  if (!tree) return std::nullopt;

  std::vector<std::size_t> remaining(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) remaining[e] = g.edge(e).multiplicity;
  std::vector<std::size_t> cursor(g.node_count(), 0);

  auto next_departure = [&](NodeId v) -> EdgeId {
    const EdgeId p = prio.at(v);
    if (p != kNoEdge && remaining[p] > 0) return p;
    const auto out = g.out_edges(v);
    std::size_t& c = cursor[v];
    while (c < out.size() && (out[c] == p || out[c] == tree->out_edge[v] || remaining[out[c]] == 0)) ++c;
    if (c < out.size()) return out[c];
    const EdgeId t = tree->out_edge[v];
    if (t != kNoEdge && remaining[t] > 0) return t;
    return kNoEdge;
  };

  EulerCycle cycle{r, {}};
  const std::size_t total = g.total_multiplicity();
  cycle.arcs.reserve(total);
  NodeId v = r;
  for (EdgeId e = next_departure(v); e != kNoEdge; e = next_departure(v)) {
    --remaining[e];
    cycle.arcs.push_back(e);
    v = g.edge(e).head;
  }
  if (v != r || cycle.arcs.size() != total) return std::nullopt;
  return cycle;
}

BigCount oriented_tree_weight(const Multigraph& g, NodeId sink, std::span<const EdgeId> excluded) {
  const auto skip = edge_mask(g, excluded);
  const auto need = touched_nodes(g, skip, sink);
  std::vector<std::size_t> row(g.node_count(), kNoNode);
  std::size_t m = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (need[v] && v != sink) row[v] = m++;
  }
  IntMatrix laplacian(m, std::vector<mpz_class>(m, 0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (skip[e]) continue;
    const Edge& edge = g.edge(e);
    if (edge.tail == sink) continue;
    const auto w = static_cast<unsigned long>(edge.multiplicity);
    laplacian[row[edge.tail]][row[edge.tail]] += w;
    if (edge.head != sink) laplacian[row[edge.tail]][row[edge.head]] -= w;
  }
  return bareiss_determinant(std::move(laplacian));
}

BigCount count_ecp(const Multigraph& g, const PrioritySet& f, NodeId r) {
  if (r >= g.node_count()) return 0;
  if (g.edge_count() == 0) return 1;
  if (!check_eulerian(g, r)) return 0;

  const PrioritySet prio = demote_sole_priorities(g, f);
  const auto excluded = prio.edges();
  const auto skip = edge_mask(g, excluded);

  std::vector<std::size_t> reduced_out(g.node_count(), 0);
  mpz_class denominator = 1;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (skip[e]) continue;
    reduced_out[g.edge(e).tail] += g.edge(e).multiplicity;
    denominator *= factorial(g.edge(e).multiplicity);
  }
  if (reduced_out[r] == 0) return 0;

  mpz_class numerator = static_cast<unsigned long>(reduced_out[r]);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.out_edges(v).empty()) continue;
    if (reduced_out[v] == 0) return 0;
    numerator *= factorial(reduced_out[v] - 1);
  }
  numerator *= oriented_tree_weight(g, r, excluded);
  if (numerator == 0) return 0;

  BigCount result;
  mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return result;
}

std::size_t enumerate_oriented_trees(const Multigraph& g, NodeId sink, std::span<const EdgeId> excluded,
                                     const TreeVisitor& visit) {
  TreeEnumerator walker(g, sink, excluded);
  return walker.run(visit);
}

std::size_t enumerate_ecp(const Multigraph& g, const PrioritySet& f, NodeId r, const CycleVisitor& visit) {
  if (r >= g.node_count()) return 0;
  if (g.edge_count() == 0) {
    visit(EulerCycle{r, {}});
    return 1;
  }
  if (!check_eulerian(g, r)) return 0;

  const PrioritySet prio = demote_sole_priorities(g, f);
  const auto excluded = prio.edges();
  const std::size_t total = g.total_multiplicity();

  std::size_t emitted = 0;
  // Per node: the free middle part of its departure order. The priority edge
  // (if any) always leads and the tree edge's last copy always closes.
  std::vector<std::vector<EdgeId>> middle(g.node_count());
  std::vector<NodeId> free_nodes;
  std::vector<std::size_t> taken(g.node_count());
  std::vector<bool> prio_taken(g.node_count());
  EulerCycle cycle{r, {}};
  cycle.arcs.reserve(total);

  enumerate_oriented_trees(g, r, excluded, [&](const OrientedTree& tree) {
    free_nodes.clear();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto& mid = middle[v];
      mid.clear();
      for (EdgeId e : g.out_edges(v)) {
        if (e == prio.at(v)) continue;
        std::size_t copies = g.edge(e).multiplicity;
        if (e == tree.out_edge[v]) --copies;
        mid.insert(mid.end(), copies, e);
      }
      if (mid.size() > 1) free_nodes.push_back(v);
    }

    while (true) {
      std::fill(taken.begin(), taken.end(), 0);
      std::fill(prio_taken.begin(), prio_taken.end(), false);
      cycle.arcs.clear();
      NodeId v = r;
      while (true) {
        EdgeId e = kNoEdge;
        if (prio.at(v) != kNoEdge && !prio_taken[v]) {
          e = prio.at(v);
          prio_taken[v] = true;
        } else if (taken[v] < middle[v].size()) {
          e = middle[v][taken[v]++];
        } else if (tree.out_edge[v] != kNoEdge && taken[v] == middle[v].size()) {
          e = tree.out_edge[v];
          ++taken[v];
        }
        if (e == kNoEdge) break;
        cycle.arcs.push_back(e);
        v = g.edge(e).head;
      }
      if (v != r || cycle.arcs.size() != total) {
        throw std::logic_error("enumerate_ecp: departure orders did not close an Eulerian cycle");
      }
      ++emitted;
      if (!visit(cycle)) return false;
      bool advanced = false;
      for (NodeId u : free_nodes) {
        if (std::next_permutation(middle[u].begin(), middle[u].end())) {
          advanced = true;
          break;
        }
      }
      if (!advanced) return true;
    }
  });
  return emitted;
}

}  // namespace phinfer

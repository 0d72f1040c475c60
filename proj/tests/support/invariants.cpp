#include "invariants.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "phinfer/ecp.hpp"
#include "phinfer/position_heap.hpp"
#include "phinfer/trace_graph.hpp"
#include "testkit.hpp"

namespace phinfer::testkit {
namespace {

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = what;
  }

 private:
  SuiteResult& r_;
};

std::string random_case_text(std::mt19937_64& rng) {
  const std::size_t sigma = 2 + rng() % 3;
  return random_text(rng, 1 + rng() % 64, sigma);
}

bool is_descendant(const PositionHeap& h, NodeId v, NodeId ancestor) {
  while (h.depth(v) > h.depth(ancestor)) v = h.parent(v);
  return v == ancestor;
}

}  // namespace

SuiteResult check_link_descent(std::size_t cases, std::uint64_t seed) {
  SuiteResult r;
  Recorder rec(r);
  std::mt19937_64 rng(seed);
  for (; r.cases < cases; ++r.cases) {
    const std::string t = random_case_text(rng);
    const auto phs = build_position_heap(t);
    const std::size_t n = t.size();
    rec.expect(phs.links[n] == 0, t + ": S(n) is not the root");
    for (NodeId i = 1; i <= n; ++i) {
      rec.expect(phs.heap.depth(phs.links[i]) + 1 == phs.heap.depth(i), t + ": link does not drop one level");
      if (i < n) rec.expect(is_descendant(phs.heap, i + 1, phs.links[i]), t + ": i+1 not below S(i)");
    }
  }
  return r;
}

SuiteResult check_trace_residual(std::size_t cases, std::uint64_t seed) {
  SuiteResult r;
  Recorder rec(r);
  std::mt19937_64 rng(seed);
  for (; r.cases < cases; ++r.cases) {
    const std::string t = random_case_text(rng);
    const std::size_t n = t.size();
    const auto phs = build_position_heap(t);
    const HeapSketch s = to_sketch(phs, {.numbers = false, .labels = true, .links = false});
    const SuffixLinkMap links = reconstruct_suffix_links(s);
    rec.expect(links == phs.links, t + ": recovered links differ");
    const SigmaMap sigma = compute_sigma(s, links);

    std::vector<std::int64_t> incoming(s.node_count(), 0);
    for (NodeId v = 1; v < s.node_count(); ++v) ++incoming[links[v]];
    for (NodeId v = 1; v < s.node_count(); ++v) {
      std::int64_t below = 0;
      for (NodeId c : s.children(v)) below += sigma[c];
      rec.expect(sigma[v] - 1 + incoming[v] - below == 0, t + ": nonzero residual");
    }

    const TraceGraph g = build_trace_graph(s, links, sigma);
    std::size_t tree_occurrences = 0;
    std::size_t link_arcs = 0;
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
      if (g.arcs[e].kind == TraceArc::Kind::kEdge) {
        tree_occurrences += g.graph.edge(e).multiplicity;
      } else {
        ++link_arcs;
      }
    }
    rec.expect(tree_occurrences == n && link_arcs == n, t + ": edge occurrences differ from n");
    for (NodeId v = 0; v < s.node_count(); ++v) {
      rec.expect(g.graph.in_multiplicity(v) == g.graph.out_multiplicity(v), t + ": unbalanced node");
    }

    // p_0 . f_1 . p_1 ... f_n, with p_i the tree path from S(i) to i+1.
    std::vector<EdgeId> edge_into(s.node_count(), kNoEdge);
    std::vector<EdgeId> link_from(s.node_count(), kNoEdge);
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
      (g.arcs[e].kind == TraceArc::Kind::kEdge ? edge_into : link_from)[g.arcs[e].node] = e;
    }
    EulerCycle cycle{0, {}};
    auto walk_down = [&](NodeId from, NodeId to) {
      std::vector<EdgeId> path;
      for (NodeId v = to; v != from; v = phs.heap.parent(v)) path.push_back(edge_into[v]);
      cycle.arcs.insert(cycle.arcs.end(), path.rbegin(), path.rend());
    };
    walk_down(0, 1);
    for (NodeId i = 1; i <= n; ++i) {
      cycle.arcs.push_back(link_from[i]);
      if (i < n) walk_down(phs.links[i], i + 1);
    }
    const bool valid = std::find(cycle.arcs.begin(), cycle.arcs.end(), kNoEdge) == cycle.arcs.end() &&
                       is_priority_cycle(g.graph, g.priority, g.root, cycle);
    rec.expect(valid, t + ": trace cycle is not a legitimate cycle");
    if (valid) rec.expect(read_text_from_cycle(g, cycle).text == t, t + ": trace cycle spells another text");
  }
  return r;
}

SuiteResult check_cycle_validator(std::size_t cases, std::uint64_t seed) {
  SuiteResult r;
  Recorder rec(r);
  std::mt19937_64 rng(seed);
  for (; r.cases < cases; ++r.cases) {
    const auto inst = random_ecp_instance(rng, 5, 8);
    std::set<std::vector<EdgeId>> seen;
    bool all_valid = true;
    const std::size_t visited = enumerate_ecp(inst.graph, inst.priority, inst.root, [&](const EulerCycle& c) {
      all_valid = all_valid && is_priority_cycle(inst.graph, inst.priority, inst.root, c);
      seen.insert(c.arcs);
      return true;
    });
    const std::uint64_t brute = brute_count_ecp(inst.graph, inst.priority, inst.root);
    std::ostringstream id;
    id << "instance " << r.cases;
    rec.expect(all_valid, id.str() + ": emitted cycle fails validation");
    rec.expect(seen.size() == visited, id.str() + ": duplicate cycle");
    rec.expect(visited == brute, id.str() + ": enumeration size differs from brute force");
    rec.expect(count_ecp(inst.graph, inst.priority, inst.root) == brute, id.str() + ": count differs");
    const auto one = solve_ecp(inst.graph, inst.priority, inst.root);
    rec.expect(one.has_value() == (brute > 0), id.str() + ": solve disagrees with count");
    if (one) rec.expect(is_priority_cycle(inst.graph, inst.priority, inst.root, *one), id.str() + ": bad solution");
  }
  return r;
}

SuiteResult check_demotion_invariance(std::size_t cases, std::uint64_t seed) {
  SuiteResult r;
  Recorder rec(r);
  std::mt19937_64 rng(seed);
  for (; r.cases < cases; ++r.cases) {
    auto inst = random_ecp_instance(rng, 5, 8);
    // Mark some sole out-edges as priority so demotion has work to do.
    for (NodeId v = 0; v < inst.graph.node_count(); ++v) {
      const auto out = inst.graph.out_edges(v);
      if (out.size() == 1 && inst.priority.at(v) == kNoEdge && inst.graph.edge(out[0]).multiplicity == 1 &&
          rng() % 2 == 0) {
        inst.priority.add(inst.graph, out[0]);
      }
    }
    const PrioritySet demoted = demote_sole_priorities(inst.graph, inst.priority);
    auto collect = [&](const PrioritySet& f) {
      std::vector<std::vector<EdgeId>> out;
      enumerate_ecp(inst.graph, f, inst.root, [&](const EulerCycle& c) {
        out.push_back(c.arcs);
        return true;
      });
      return out;
    };
    std::ostringstream id;
    id << "instance " << r.cases;
    rec.expect(solve_ecp(inst.graph, inst.priority, inst.root) == solve_ecp(inst.graph, demoted, inst.root),
               id.str() + ": solve changed");
    rec.expect(count_ecp(inst.graph, inst.priority, inst.root) == count_ecp(inst.graph, demoted, inst.root),
               id.str() + ": count changed");
    rec.expect(collect(inst.priority) == collect(demoted), id.str() + ": enumeration changed");
    rec.expect(brute_count_ecp(inst.graph, inst.priority, inst.root) ==
                   brute_count_ecp(inst.graph, demoted, inst.root),
               id.str() + ": brute-force count changed");
  }
  return r;
}

SuiteResult check_alphabet_equivariance(std::size_t cases, std::uint64_t seed) {
  SuiteResult r;
  Recorder rec(r);
  std::mt19937_64 rng(seed);
  for (; r.cases < cases; ++r.cases) {
    const std::string t = random_case_text(rng);
    std::string letters = "abcd";
    std::shuffle(letters.begin(), letters.end(), rng);
    std::string image = t;
    for (char& c : image) c = letters[c - 'a'];
    const auto x = build_position_heap(t);
    const auto y = build_position_heap(image);
    bool same = x.heap.node_count() == y.heap.node_count() && x.links == y.links;
    for (NodeId v = 1; same && v < x.heap.node_count(); ++v) {
      same = x.heap.parent(v) == y.heap.parent(v) && letters[x.heap.label(v) - 'a'] == y.heap.label(v);
    }
    rec.expect(same, t + " vs " + image + ": heaps differ beyond renaming");
  }
  return r;
}

}  // namespace phinfer::testkit

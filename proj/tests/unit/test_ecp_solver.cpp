#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "phinfer/ecp.hpp"
#include "phinfer/exact_det.hpp"
#include "phinfer/trace_graph.hpp"
#include "testkit.hpp"

using namespace phinfer;

namespace {

Multigraph two_cycle() {
  Multigraph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  return g;
}

TraceGraph labeled_example() {
  const HeapSketch s = testkit::load_fixture("labeled_example.pht");
  const SuffixLinkMap links = reconstruct_suffix_links(s);
  return build_trace_graph(s, links, compute_sigma(s, links));
}

mpz_class leibniz(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  mpz_class total = 0;
  do {
    mpz_class term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Every out-edge choice per node, kept when all chosen paths reach the sink.
std::vector<std::vector<EdgeId>> brute_trees(const Multigraph& g, NodeId sink, const std::vector<EdgeId>& excluded) {
  std::vector<bool> skip(g.edge_count(), false);
  for (EdgeId e : excluded) skip[e] = true;
  std::vector<bool> need(g.node_count(), false);
  need[sink] = true;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!skip[e]) need[g.edge(e).tail] = need[g.edge(e).head] = true;
  }
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> choice(g.node_count(), kNoEdge);
  std::function<void(NodeId)> go = [&](NodeId v) {
    if (v == g.node_count()) {
      for (NodeId u = 0; u < g.node_count(); ++u) {
        if (!need[u]) continue;
        NodeId w = u;
        for (std::size_t steps = 0; w != sink; ++steps) {
          if (steps > g.node_count()) return;
          w = g.edge(choice[w]).head;
        }
      }
      out.push_back(choice);
      return;
    }
    if (!need[v] || v == sink) {
      go(v + 1);
      return;
    }
    for (EdgeId e : g.out_edges(v)) {
      if (skip[e]) continue;
      choice[v] = e;
      go(v + 1);
    }
    choice[v] = kNoEdge;
  };
  go(0);
  return out;
}

}  // namespace

TEST_CASE("exact determinants") {
  CHECK(bareiss_determinant({}) == 1);
  CHECK(bareiss_determinant({{2, 0}, {0, 3}}) == 6);
  CHECK(bareiss_determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(bareiss_determinant({{1, 2}, {2, 4}}) == 0);
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 6;
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (auto& row : m) {
      for (auto& x : row) x = static_cast<long>(rng() % 21) - 10;
    }
    REQUIRE(bareiss_determinant(m) == leibniz(m));
  }
  // Entries large enough to overflow 64-bit intermediates.
  IntMatrix big(3, std::vector<mpz_class>(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) big[i][j] = mpz_class("1000000000000") * (i + 1) + j * j;
  }
  CHECK(bareiss_determinant(big) == leibniz(big));
}

TEST_CASE("multigraph validation") {
  Multigraph g(4);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
  const EdgeId e = g.add_edge(0, 1, 2);
  CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
  CHECK(g.find_edge(0, 1) == e);
  CHECK(g.out_multiplicity(0) == 2);
  CHECK(g.total_multiplicity() == 2);

  PrioritySet f(g);
  CHECK_THROWS_AS(f.add(g, e), std::invalid_argument);
  const EdgeId u = g.add_edge(0, 2);
  PrioritySet f2(g);
  f2.add(g, u);
  CHECK(f2.contains(g, u));
  f2.add(g, u);
  CHECK(f2.size() == 1);
  CHECK_THROWS_AS(f2.add(g, g.add_edge(0, 3)), std::invalid_argument);
}

TEST_CASE("Eulerian check") {
  CHECK(check_eulerian(two_cycle(), 0));
  Multigraph single(2);
  single.add_edge(0, 1);
  CHECK_FALSE(check_eulerian(single, 0));
  Multigraph split(4);
  split.add_edge(0, 1);
  split.add_edge(1, 0);
  split.add_edge(2, 3);
  split.add_edge(3, 2);
  CHECK_FALSE(check_eulerian(split, 0));
  CHECK(check_eulerian(labeled_example().graph, 0));
}

TEST_CASE("oriented spanning trees") {
  const Multigraph g = two_cycle();
  const auto tree = oriented_spanning_tree(g, 0);
  REQUIRE(tree);
  CHECK(tree->out_edge[1] == 1);
  CHECK(tree->out_edge[0] == kNoEdge);

  Multigraph split(4);
  split.add_edge(0, 1);
  split.add_edge(1, 0);
  split.add_edge(2, 3);
  split.add_edge(3, 2);
  CHECK_FALSE(oriented_spanning_tree(split, 0));

  const TraceGraph t = labeled_example();
  const auto excluded = t.priority.edges();
  const auto unique = oriented_spanning_tree(t.graph, t.root, excluded);
  REQUIRE(unique);
  std::size_t seen = 0;
  enumerate_oriented_trees(t.graph, t.root, excluded, [&](const OrientedTree& found) {
    ++seen;
    CHECK(found.out_edge == unique->out_edge);
    return true;
  });
  CHECK(seen == 1);
  CHECK(brute_trees(t.graph, t.root, excluded).size() == 1);
}

TEST_CASE("tree enumeration against brute force") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    const auto inst = testkit::random_ecp_instance(rng, 6, 10);
    const auto excluded = inst.priority.edges();
    const auto expected = brute_trees(inst.graph, inst.root, excluded);
    std::set<std::vector<EdgeId>> got;
    const std::size_t n = enumerate_oriented_trees(inst.graph, inst.root, excluded, [&](const OrientedTree& t) {
      got.insert(t.out_edge);
      return true;
    });
    REQUIRE(n == got.size());
    if (got != std::set<std::vector<EdgeId>>(expected.begin(), expected.end())) {
      for (const Edge& e : inst.graph.edges()) MESSAGE(e.tail << "->" << e.head << " x" << e.multiplicity);
      MESSAGE("root " << inst.root << " excluded " << excluded.size() << " got " << got.size() << " want " << expected.size());
    }
    REQUIRE(got == std::set<std::vector<EdgeId>>(expected.begin(), expected.end()));

    mpz_class weight = 0;
    for (const auto& choice : expected) {
      mpz_class w = 1;
      for (EdgeId e : choice) {
        if (e != kNoEdge) w *= static_cast<unsigned long>(inst.graph.edge(e).multiplicity);
      }
      weight += w;
    }
    REQUIRE(oriented_tree_weight(inst.graph, inst.root, excluded) == weight);
  }
}

TEST_CASE("solving small instances") {
  const Multigraph g = two_cycle();
  const auto cycle = solve_ecp(g, PrioritySet(g), 0);
  REQUIRE(cycle);
  CHECK(cycle->arcs == std::vector<EdgeId>{0, 1});
  CHECK(count_ecp(g, PrioritySet(g), 0) == 1);

  // Triangle a->b->c->a with chord a->c and a doubled c->a.
  Multigraph t(3);
  t.add_edge(0, 1);
  t.add_edge(1, 2);
  const EdgeId ca = t.add_edge(2, 0, 2);
  const EdgeId ac = t.add_edge(0, 2);
  PrioritySet f(t);
  f.add(t, ac);
  const auto solved = solve_ecp(t, f, 0);
  REQUIRE(solved);
  CHECK(solved->arcs.front() == ac);
  CHECK(testkit::is_priority_cycle(t, f, 0, *solved));
  const auto all = testkit::brute_enumerate_ecp(t, f, 0);
  CHECK(count_ecp(t, f, 0) == all.size());
  for (const auto& c : all) CHECK(c.arcs.front() == ac);
  CHECK(std::count(solved->arcs.begin(), solved->arcs.end(), ca) == 2);
}

TEST_CASE("empty and invalid instances") {
  Multigraph empty(1);
  CHECK(count_ecp(empty, PrioritySet(empty), 0) == 1);
  CHECK(solve_ecp(empty, PrioritySet(empty), 0)->arcs.empty());
  Multigraph single(2);
  single.add_edge(0, 1);
  CHECK(count_ecp(single, PrioritySet(single), 0) == 0);
  CHECK_FALSE(solve_ecp(single, PrioritySet(single), 0));
  CHECK(enumerate_ecp(single, PrioritySet(single), 0, [](const EulerCycle&) { return true; }) == 0);
}

TEST_CASE("labeled example counts six cycles") {
  const TraceGraph t = labeled_example();
  CHECK(count_ecp(t.graph, t.priority, t.root) == 6);
  CHECK(testkit::brute_count_ecp(t.graph, t.priority, t.root) == 6);
  std::size_t stops_after = 0;
  enumerate_ecp(t.graph, t.priority, t.root, [&](const EulerCycle&) { return ++stops_after < 2; });
  CHECK(stops_after == 2);
}

TEST_CASE("demotion keeps the answer") {
  Multigraph g(3);
  const EdgeId ab = g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(0, 2);
  g.add_edge(2, 0);
  PrioritySet f(g);
  f.add(g, ab);
  const EdgeId ba = *g.find_edge(1, 0);
  f.add(g, ba);
  const PrioritySet demoted = demote_sole_priorities(g, f);
  CHECK(demoted.at(0) == ab);
  CHECK(demoted.at(1) == kNoEdge);
  CHECK(count_ecp(g, f, 0) == testkit::brute_count_ecp(g, f, 0));
  CHECK(count_ecp(g, demoted, 0) == count_ecp(g, f, 0));
}

TEST_CASE("random instances against brute force") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 300; ++round) {
    const auto inst = testkit::random_ecp_instance(rng, 5, 8);
    const auto expected = testkit::brute_enumerate_ecp(inst.graph, inst.priority, inst.root);
    REQUIRE(count_ecp(inst.graph, inst.priority, inst.root) == expected.size());

    std::set<std::vector<EdgeId>> got;
    std::size_t visited = enumerate_ecp(inst.graph, inst.priority, inst.root, [&](const EulerCycle& c) {
      REQUIRE(testkit::is_priority_cycle(inst.graph, inst.priority, inst.root, c));
      got.insert(c.arcs);
      return true;
    });
    REQUIRE(visited == got.size());
    std::set<std::vector<EdgeId>> want;
    for (const auto& c : expected) want.insert(c.arcs);
    REQUIRE(got == want);

    const auto one = solve_ecp(inst.graph, inst.priority, inst.root);
    REQUIRE(one.has_value() == !expected.empty());
    if (one) REQUIRE(testkit::is_priority_cycle(inst.graph, inst.priority, inst.root, *one));
  }
}

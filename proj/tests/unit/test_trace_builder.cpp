#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "phinfer/ecp.hpp"
#include "phinfer/position_heap.hpp"
#include "phinfer/trace_graph.hpp"

using namespace phinfer;

namespace {

NodeId node(const HeapSketch& s, const char* id) { return s.find(id).value(); }

HeapSketch labeled_tree(std::initializer_list<std::tuple<const char*, const char*, char>> edges) {
  HeapSketch s("r");
  for (const auto& [parent, child, label] : edges) s.add_child(s.find(parent).value(), child, label);
  s.mark_labeled(true);
  return s;
}

const std::set<std::string> kLabeledClass{"abaababc", "ababaabc", "aaabbabc", "aabbaabc", "baaababc", "baabaabc"};

}  // namespace

TEST_CASE("suffix links from labels") {
  const HeapSketch s = testkit::load_fixture("labeled_example.pht");
  const SuffixLinkMap links = reconstruct_suffix_links(s);
  const std::vector<std::pair<const char*, const char*>> expected{
      {"k", "r"}, {"m", "r"}, {"h", "r"}, {"q", "k"}, {"d", "m"}, {"w", "k"}, {"z", "h"}, {"f", "z"}};
  for (const auto& [from, to] : expected) CHECK(links[node(s, from)] == node(s, to));
  CHECK_FALSE(links.defined(s.root()));

  // Same links as the fixture that carries them explicitly.
  const HeapSketch with_links = testkit::load_fixture("links_example.pht");
  CHECK(with_links.links() == links);
}

TEST_CASE("suffix links of a star and a path") {
  const HeapSketch star = labeled_tree({{"r", "x", 'a'}, {"r", "y", 'b'}, {"r", "z", 'c'}});
  const SuffixLinkMap links = reconstruct_suffix_links(star);
  for (NodeId v = 1; v < 4; ++v) CHECK(links[v] == star.root());

  const HeapSketch path = labeled_tree({{"r", "x", 'a'}, {"x", "y", 'a'}});
  CHECK(reconstruct_suffix_links(path)[node(path, "y")] == node(path, "x"));
}

TEST_CASE("suffix link failures") {
  const HeapSketch missing = labeled_tree({{"r", "x", 'a'}, {"x", "y", 'b'}});
  try {
    reconstruct_suffix_links(missing);
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.kind() == TraceFailure::kNoSuchChild);
    CHECK(e.node() == node(missing, "y"));
  }
  const HeapSketch repeated = labeled_tree({{"r", "x", 'a'}, {"r", "y", 'a'}});
  try {
    reconstruct_suffix_links(repeated);
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.kind() == TraceFailure::kRepeatedLabel);
  }
}

TEST_CASE("edge multiplicities of the labeled example") {
  const HeapSketch s = testkit::load_fixture("labeled_example.pht");
  const SigmaMap sigma = compute_sigma(s, reconstruct_suffix_links(s));
  CHECK(sigma[node(s, "k")] == 2);
  CHECK(sigma[node(s, "d")] == 2);
  CHECK(sigma[node(s, "h")] == 0);
  CHECK(sigma[node(s, "z")] == 0);
  for (const char* id : {"m", "q", "w", "f"}) CHECK(sigma[node(s, id)] == 1);
  CHECK(sigma.total() == 8);
}

TEST_CASE("negative multiplicity") {
  // Two nodes link into the leaf a.
  const HeapSketch s =
      labeled_tree({{"r", "a", 'a'}, {"r", "b", 'b'}, {"r", "c", 'c'}, {"b", "ba", 'a'}, {"c", "ca", 'a'}});
  try {
    compute_sigma(s, reconstruct_suffix_links(s));
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.kind() == TraceFailure::kNegativeSigma);
  }
}

TEST_CASE("trace graph of the labeled example") {
  const HeapSketch s = testkit::load_fixture("labeled_example.pht");
  const SuffixLinkMap links = reconstruct_suffix_links(s);
  const TraceGraph g = build_trace_graph(s, links, compute_sigma(s, links));
  std::size_t tree_edges = 0;
  std::size_t link_arcs = 0;
  std::size_t tree_mult = 0;
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    if (g.arcs[e].kind == TraceArc::Kind::kEdge) {
      ++tree_edges;
      tree_mult += g.graph.edge(e).multiplicity;
    } else {
      ++link_arcs;
      CHECK(g.graph.edge(e).multiplicity == 1);
    }
  }
  CHECK(tree_edges == 6);
  CHECK(link_arcs == 8);
  CHECK(tree_mult == 8);

  std::set<NodeId> priority_tails;
  for (EdgeId e : g.priority.edges()) priority_tails.insert(g.graph.edge(e).tail);
  CHECK(priority_tails == std::set<NodeId>{node(s, "k"), node(s, "m"), node(s, "d")});
  CHECK(check_eulerian(g.graph, g.root));
}

TEST_CASE("single edge trace graph") {
  const HeapSketch s = labeled_tree({{"r", "x", 'c'}});
  const SuffixLinkMap links = reconstruct_suffix_links(s);
  const SigmaMap sigma = compute_sigma(s, links);
  CHECK(sigma[1] == 1);
  const TraceGraph g = build_trace_graph(s, links, sigma);
  CHECK(g.graph.edge_count() == 2);
  CHECK(g.priority.size() == 0);

  const EulerCycle cycle{s.root(), {0, 1}};
  REQUIRE(g.arcs[0].kind == TraceArc::Kind::kEdge);
  const CycleReading reading = read_text_from_cycle(g, cycle);
  CHECK(reading.text == "c");
  CHECK(reading.numbering == std::vector<std::size_t>{0, 1});
}

TEST_CASE("every legitimate cycle spells an answer") {
  const HeapSketch s = testkit::load_fixture("labeled_example.pht");
  const SuffixLinkMap links = reconstruct_suffix_links(s);
  const TraceGraph g = build_trace_graph(s, links, compute_sigma(s, links));
  std::set<std::string> texts;
  enumerate_ecp(g.graph, g.priority, g.root, [&](const EulerCycle& cycle) {
    const CycleReading reading = read_text_from_cycle(g, cycle);
    texts.insert(reading.text);
    // The numbering is the heap's own: node number i carries h_i.
    const auto phs = build_position_heap(reading.text);
    for (NodeId v = 1; v < s.node_count(); ++v) {
      CHECK(phs.heap.label(reading.numbering[v]) == *s.label(v));
      CHECK(phs.heap.parent(reading.numbering[v]) == reading.numbering[s.parent(v)]);
    }
    return true;
  });
  CHECK(texts == kLabeledClass);

  const auto one = solve_ecp(g.graph, g.priority, g.root);
  REQUIRE(one);
  CHECK(kLabeledClass.count(read_text_from_cycle(g, *one).text) == 1);
}

TEST_CASE("labels pushed down the links") {
  const HeapSketch bare = testkit::load_fixture("links_example.pht");
  const HeapSketch target = testkit::load_fixture("labeled_example.pht");
  // Root children in insertion order: h, m, k.
  const std::vector<char> letters{'c', 'b', 'a'};
  const HeapSketch labeled = propagate_labels(bare, letters);
  REQUIRE(labeled.labeled());
  for (NodeId v = 1; v < bare.node_count(); ++v) {
    CHECK(labeled.label(v) == target.label(target.find(bare.id(v)).value()));
  }
}

TEST_CASE("labels of a star are the assignment") {
  HeapSketch star("r");
  for (const char* id : {"x", "y", "z"}) star.add_child(0, id);
  SuffixLinkMap links(4);
  for (NodeId v = 1; v < 4; ++v) links[v] = 0;
  star.set_links(links);
  const std::vector<char> letters{'b', 'c', 'a'};
  const HeapSketch labeled = propagate_labels(star, letters);
  for (NodeId v = 1; v < 4; ++v) CHECK(labeled.label(v) == letters[v - 1]);
}

TEST_CASE("inconsistent links") {
  HeapSketch s("r");
  s.add_child(0, "x");
  s.add_child(1, "y");
  s.add_child(2, "z");
  SuffixLinkMap links(4);
  links[1] = 0;
  links[2] = 1;
  links[3] = 0;  // depth drops by two
  s.set_links(links);
  const std::vector<char> letters{'a'};
  try {
    propagate_labels(s, letters);
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.kind() == TraceFailure::kLinkInconsistent);
  }

  SuffixLinkMap partial(4);
  partial[1] = 0;
  partial[2] = 1;
  s.set_links(partial);
  CHECK_THROWS_AS(propagate_labels(s, letters), TraceError);
}

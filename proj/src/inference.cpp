#include "phinfer/inference.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <variant>

#include "phinfer/letter_renaming.hpp"
#include "phinfer/position_heap.hpp"
#include "phinfer/trace_graph.hpp"
#include "phinfer/tree_compare.hpp"

namespace phinfer {
namespace {

std::vector<char> labels_of(const HeapSketch& s) {
  std::vector<char> out(s.node_count(), '\0');
  for (NodeId v = 1; v < s.node_count(); ++v) out[v] = s.label(v).value_or('\0');
  return out;
}

std::optional<HeapWithLinks> try_build(std::string_view text) {
  if (!is_valid_text(text)) return std::nullopt;
  return build_position_heap(text);
}

// A numbered sketch equals the heap when every node's parent carries the
// number of the heap parent (and, with labels, the same letter).
bool numbered_equal(const HeapSketch& s, const PositionHeap& heap, bool labels) {
  if (s.node_count() != heap.node_count()) return false;
  for (NodeId v = 1; v < s.node_count(); ++v) {
    const std::size_t k = s.number(v);
    if (s.number(s.parent(v)) != heap.parent(k)) return false;
    if (labels && s.label(v) != heap.label(k)) return false;
  }
  return true;
}

// Calls fn(indices) for each sequence of k distinct values below n, in
// lexicographic order; stops when fn returns false. Returns false if stopped.
// With `above`, position y only takes values larger than those at the
// positions listed in above[y] (all smaller than y).
template <typename Fn>
bool for_each_k_permutation(std::size_t n, std::size_t k, Fn&& fn,
                            const std::vector<std::vector<std::size_t>>* above = nullptr) {
  std::vector<std::size_t> pick(k);
  std::vector<bool> used(n, false);
  auto lowest = [&](std::size_t depth) {
    std::size_t low = 0;
    if (above) {
      for (std::size_t j : (*above)[depth]) low = std::max(low, pick[j] + 1);
    }
    return low;
  };
  // Iterative depth-first search; `pick[depth]` holds the candidate tried.
  std::size_t depth = 0;
  if (k == 0) return fn(std::span<const std::size_t>(pick));
  pick[0] = 0;
  while (true) {
    std::size_t& c = pick[depth];
    while (c < n && used[c]) ++c;
    if (c == n) {
      if (depth == 0) return true;
      --depth;
      used[pick[depth]] = false;
      ++pick[depth];
      continue;
    }
    if (depth + 1 == k) {
      if (!fn(std::span<const std::size_t>(pick))) return false;
      ++c;
      continue;
    }
    used[c] = true;
    ++depth;
    pick[depth] = lowest(depth);
  }
}

// Maps letters of a text labeled with alphabet[0..k) to the letters chosen by
// a k-permutation of alphabet positions.
std::string relabel(const std::string& text, const Alphabet& alphabet, std::span<const std::size_t> perm) {
  std::array<char, 256> to{};
  for (std::size_t j = 0; j < perm.size(); ++j) to[static_cast<unsigned char>(alphabet[j])] = alphabet[perm[j]];
  std::string out = text;
  for (char& c : out) c = to[static_cast<unsigned char>(c)];
  return out;
}

std::size_t root_degree(const HeapSketch& s) { return s.children(HeapSketch::root()).size(); }

void require_alphabet_fits(const HeapSketch& s, const Alphabet& alphabet) {
  if (root_degree(s) > alphabet.size()) {
    throw AlphabetTooSmall("root has " + std::to_string(root_degree(s)) + " edges but the alphabet only " +
                           std::to_string(alphabet.size()) + " letters");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Labeled-isomorphism check of PH(text) against a labeled sketch. Returns
// sketch node -> heap node (= text position).
std::optional<std::vector<std::size_t>> match_heap(const HeapSketch& s, const HeapWithLinks& phs) {
  const HeapSketch built = to_sketch(phs, {.numbers = false, .labels = true, .links = false});
  return match_labeled(s, built);
}

using TraceOrReason = std::variant<TraceGraph, std::string>;

TraceOrReason trace_graph_for(const HeapSketch& s) {
  try {
    const SuffixLinkMap links = reconstruct_suffix_links(s);
    const SigmaMap sigma = compute_sigma(s, links);
    return build_trace_graph(s, links, sigma);
  } catch (const TraceError& e) {
    return std::string(e.what());
  }
}

// Accepts a text read off a trace cycle if PH(text) is isomorphic to the
// labeled sketch (and, when `links` is given, the isomorphism carries those
// links onto the heap's suffix links).
std::optional<Inferred> accept_labeled(const HeapSketch& s, std::string text, const SuffixLinkMap* links) {
  const auto phs = try_build(text);
  if (!phs) return std::nullopt;
  auto map = match_heap(s, *phs);
  if (!map) return std::nullopt;
  if (links) {
    for (NodeId v = 1; v < s.node_count(); ++v) {
      if ((*map)[(*links)[v]] != phs->links[(*map)[v]]) return std::nullopt;
    }
  }
  return Inferred{std::move(text), std::move(*map), labels_of(s)};
}

InferenceOutcome solve_labeled(const HeapSketch& s, const SuffixLinkMap* links) {
  auto traced = trace_graph_for(s);
  if (auto* reason = std::get_if<std::string>(&traced)) return InferenceOutcome::invalid(*reason);
  const TraceGraph& g = std::get<TraceGraph>(traced);
  const auto cycle = solve_ecp(g.graph, g.priority, g.root);
  if (!cycle) return InferenceOutcome::invalid("trace graph has no Eulerian cycle respecting the suffix links");
  auto found = accept_labeled(s, read_text_from_cycle(g, *cycle).text, links);
  if (!found) return InferenceOutcome::invalid("position heap of the candidate text does not match");
  return InferenceOutcome::success(std::move(*found));
}

// Visits texts of all legitimate cycles; the first is verified, the rest
// follow from it.
std::size_t enumerate_labeled(const HeapSketch& s, const SuffixLinkMap* links,
                              const std::function<bool(const std::string&)>& visit) {
  auto traced = trace_graph_for(s);
  if (!std::holds_alternative<TraceGraph>(traced)) return 0;
  const TraceGraph& g = std::get<TraceGraph>(traced);
  std::size_t visited = 0;
  enumerate_ecp(g.graph, g.priority, g.root, [&](const EulerCycle& cycle) {
    std::string text = read_text_from_cycle(g, cycle).text;
    if (visited == 0 && !accept_labeled(s, text, links)) return false;
    ++visited;
    return visit(text);
  });
  return visited;
}

std::vector<char> canonical_root_letters(const HeapSketch& s, const Alphabet& alphabet) {
  const std::size_t k = root_degree(s);
  return std::vector<char>(alphabet.letters().begin(), alphabet.letters().begin() + static_cast<std::ptrdiff_t>(k));
}

std::variant<HeapSketch, std::string> label_by_links(const HeapSketch& s, const Alphabet& alphabet) {
  try {
    return propagate_labels(s, canonical_root_letters(s, alphabet));
  } catch (const TraceError& e) {
    return std::string(e.what());
  }
}

}  // namespace

BigCount falling_factorial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigCount out = 1;
  for (std::size_t i = 0; i < k; ++i) out *= static_cast<unsigned long>(n - i);
  return out;
}

InferenceOutcome infer_p1(const HeapSketch& s) {
  require(s.numbered() && s.labeled(), "problem 1 needs a numbered, labeled tree");
  const auto by_number = s.nodes_by_number();
  std::vector<char> first(s.node_count(), '\0');
  for (NodeId v : s.bfs_order()) {
    if (v == HeapSketch::root()) continue;
    first[v] = s.parent(v) == HeapSketch::root() ? *s.label(v) : first[s.parent(v)];
  }
  std::string text(s.node_count() - 1, '\0');
  for (std::size_t i = 1; i < s.node_count(); ++i) text[i - 1] = first[by_number[i]];

  const auto phs = try_build(text);
  if (!phs) return InferenceOutcome::invalid("candidate text '" + text + "' does not end with a unique letter");
  if (!numbered_equal(s, phs->heap, true)) return InferenceOutcome::invalid("position heap of '" + text + "' differs");
  return InferenceOutcome::success({std::move(text), s.numbers(), labels_of(s)});
}

InferenceOutcome infer_p2(const HeapSketch& s, const Alphabet& alphabet) {
  require(s.numbered(), "problem 2 needs a numbered tree");
  require_alphabet_fits(s, alphabet);
  std::vector<NodeId> root_kids = s.children(HeapSketch::root());
  std::sort(root_kids.begin(), root_kids.end(), [&](NodeId a, NodeId b) { return s.number(a) < s.number(b); });
  std::vector<char> first(s.node_count(), '\0');
  for (std::size_t j = 0; j < root_kids.size(); ++j) first[root_kids[j]] = alphabet[j];
  for (NodeId v : s.bfs_order()) {
    if (v != HeapSketch::root() && s.parent(v) != HeapSketch::root()) first[v] = first[s.parent(v)];
  }
  const auto by_number = s.nodes_by_number();
  std::string text(s.node_count() - 1, '\0');
  for (std::size_t i = 1; i < s.node_count(); ++i) text[i - 1] = first[by_number[i]];

  const auto phs = try_build(text);
  if (!phs) return InferenceOutcome::invalid("candidate text '" + text + "' does not end with a unique letter");
  if (!numbered_equal(s, phs->heap, false)) return InferenceOutcome::invalid("position heap of '" + text + "' differs");
  std::vector<char> labels(s.node_count(), '\0');
  for (NodeId v = 1; v < s.node_count(); ++v) labels[v] = phs->heap.label(s.number(v));
  return InferenceOutcome::success({std::move(text), s.numbers(), std::move(labels)});
}

BigCount count_p2(const HeapSketch& s, const Alphabet& alphabet) {
  if (!infer_p2(s, alphabet)) return 0;
  return falling_factorial(alphabet.size(), root_degree(s));
}

std::size_t enum_p2(const HeapSketch& s, const Alphabet& alphabet, const TextVisitor& visit) {
  const auto canonical = infer_p2(s, alphabet);
  if (!canonical) return 0;
  std::size_t visited = 0;
  for_each_k_permutation(alphabet.size(), root_degree(s), [&](std::span<const std::size_t> perm) {
    ++visited;
    return visit(relabel(canonical.text(), alphabet, perm));
  });
  return visited;
}

InferenceOutcome infer_p3(const HeapSketch& s) {
  require(s.labeled(), "problem 3 needs a labeled tree");
  return solve_labeled(s, nullptr);
}

BigCount count_p3(const HeapSketch& s) {
  if (!infer_p3(s)) return 0;
  const TraceGraph g = std::get<TraceGraph>(trace_graph_for(s));
  return count_ecp(g.graph, g.priority, g.root);
}

std::size_t enum_p3(const HeapSketch& s, const TextVisitor& visit) {
  require(s.labeled(), "problem 3 needs a labeled tree");
  return enumerate_labeled(s, nullptr, visit);
}

InferenceOutcome infer_p4(const HeapSketch& s, const Alphabet& alphabet) {
  require(s.has_links(), "problem 4 needs suffix links");
  require_alphabet_fits(s, alphabet);
  auto labeled = label_by_links(s, alphabet);
  if (auto* reason = std::get_if<std::string>(&labeled)) return InferenceOutcome::invalid(*reason);
  return solve_labeled(std::get<HeapSketch>(labeled), &s.links());
}

// Root labelings related by a renaming of the labeled sketch onto itself
// spell the same texts (through correspondingly renamed cycles), so each
// text is counted once per group element.
BigCount count_p4(const HeapSketch& s, const Alphabet& alphabet) {
  if (!infer_p4(s, alphabet)) return 0;
  const HeapSketch labeled = std::get<HeapSketch>(label_by_links(s, alphabet));
  const TraceGraph g = std::get<TraceGraph>(trace_graph_for(labeled));
  const BigCount total = count_ecp(g.graph, g.priority, g.root) * falling_factorial(alphabet.size(), root_degree(s));
  BigCount out;
  mpz_divexact(out.get_mpz_t(), total.get_mpz_t(), root_symmetry(labeled).order.get_mpz_t());
  return out;
}

std::size_t enum_p4(const HeapSketch& s, const Alphabet& alphabet, const TextVisitor& visit) {
  require(s.has_links(), "problem 4 needs suffix links");
  require_alphabet_fits(s, alphabet);
  auto labeled = label_by_links(s, alphabet);
  if (!std::holds_alternative<HeapSketch>(labeled)) return 0;
  std::vector<std::vector<std::size_t>> above;
  try {
    above = root_symmetry(std::get<HeapSketch>(labeled)).must_exceed();
  } catch (const std::invalid_argument&) {
    return 0;  // repeated sibling labels: no heap has this shape and these links
  }
  std::size_t visited = 0;
  // Only orbit-minimal root labelings: one representative per text.
  enumerate_labeled(std::get<HeapSketch>(labeled), &s.links(), [&](const std::string& text) {
    return for_each_k_permutation(
        alphabet.size(), root_degree(s),
        [&](std::span<const std::size_t> perm) {
          ++visited;
          return visit(relabel(text, alphabet, perm));
        },
        &above);
  });
  return visited;
}

bool verify_text(const HeapSketch& s, ProblemKind kind, std::string_view text) {
  const auto phs = try_build(text);
  if (!phs) return false;
  switch (kind) {
    case ProblemKind::kNumberedLabeled:
      return tree_equal(to_sketch(*phs, {.numbers = true, .labels = true, .links = false}), s, true);
    case ProblemKind::kNumbered:
      return same_numbered_shape(to_sketch(*phs, {.numbers = true, .labels = false, .links = false}), s);
    case ProblemKind::kLabeled:
      return tree_equal(to_sketch(*phs, {.numbers = false, .labels = true, .links = false}), s, false);
    case ProblemKind::kLinksOnly: {
      require(s.has_links(), "problem 4 needs suffix links");
      if (phs->heap.children(0).size() != root_degree(s)) return false;
      // Any injective root labeling works: the heap must be a letter
      // renaming of it, and the renaming must carry links onto heap links.
      std::vector<char> letters;
      for (const auto& c : phs->heap.children(0)) letters.push_back(c.letter);
      HeapSketch labeled;
      try {
        labeled = propagate_labels(s, letters);
      } catch (const TraceError&) {
        return false;
      }
      const auto map = find_renaming(labeled, to_sketch(*phs, {.numbers = false, .labels = true, .links = false}));
      if (!map) return false;
      for (NodeId v = 1; v < s.node_count(); ++v) {
        if ((*map)[s.links()[v]] != phs->links[(*map)[v]]) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<ProblemKind> problem_kind_of(const HeapSketch& s) {
  if (s.numbered() && s.labeled()) return ProblemKind::kNumberedLabeled;
  if (s.numbered()) return ProblemKind::kNumbered;
  if (s.labeled()) return ProblemKind::kLabeled;
  if (s.has_links()) return ProblemKind::kLinksOnly;
  return std::nullopt;
}

}  // namespace phinfer

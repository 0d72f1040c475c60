#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phinfer/alphabet.hpp"
#include "phinfer/ecp.hpp"
#include "phinfer/heap_sketch.hpp"

namespace phinfer {

enum class ProblemKind {
  kNumberedLabeled = 1,  // numbers and labels given
  kNumbered = 2,         // numbers only
  kLabeled = 3,          // labels only
  kLinksOnly = 4,        // suffix links only
};

class AlphabetTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Inferred {
  std::string text;
  // Per sketch node: its position in the text (root 0).
  std::vector<std::size_t> numbering;
  // Per sketch node: the letter on its incoming edge ('\0' at the root).
  std::vector<char> labels;
};

// Either a source text (with recovered numbering and labels) or invalid.
class InferenceOutcome {
 public:
  static InferenceOutcome success(Inferred found) { return InferenceOutcome(std::move(found), {}); }
  static InferenceOutcome invalid(std::string reason) { return InferenceOutcome(std::nullopt, std::move(reason)); }

  [[nodiscard]] bool valid() const noexcept { return found_.has_value(); }
  explicit operator bool() const noexcept { return valid(); }
  [[nodiscard]] const Inferred& value() const { return found_.value(); }
  [[nodiscard]] const std::string& text() const { return found_.value().text; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  InferenceOutcome(std::optional<Inferred> found, std::string reason)
      : found_(std::move(found)), reason_(std::move(reason)) {}

  std::optional<Inferred> found_;
  std::string reason_;
};

// Receives each enumerated text; return false to stop.
using TextVisitor = std::function<bool(const std::string&)>;

// Problem 1: T[i] is the first letter of node i's path label, then PH(T)
// must reproduce the sketch exactly.
InferenceOutcome infer_p1(const HeapSketch& s);

// Problem 2: the root's edges take the first letters of `alphabet` in order
// of their child numbers; every other letter follows from Problem 1.
// Throws AlphabetTooSmall when the root has more children than letters.
InferenceOutcome infer_p2(const HeapSketch& s, const Alphabet& alphabet);
BigCount count_p2(const HeapSketch& s, const Alphabet& alphabet);
// Texts for every injective root labeling, k-permutations in lexicographic
// order of alphabet positions. Returns the number visited.
std::size_t enum_p2(const HeapSketch& s, const Alphabet& alphabet, const TextVisitor& visit);

// Problem 3: suffix links, edge multiplicities, trace graph, priority
// Eulerian cycle, then read off the text.
InferenceOutcome infer_p3(const HeapSketch& s);
BigCount count_p3(const HeapSketch& s);
std::size_t enum_p3(const HeapSketch& s, const TextVisitor& visit);

// Problem 4: letters for the root's edges in child order, labels pushed
// down the links, then Problem 3. Throws AlphabetTooSmall.
InferenceOutcome infer_p4(const HeapSketch& s, const Alphabet& alphabet);
BigCount count_p4(const HeapSketch& s, const Alphabet& alphabet);
// Outer loop over Eulerian cycles, inner loop over root labelings.
std::size_t enum_p4(const HeapSketch& s, const Alphabet& alphabet, const TextVisitor& visit);

// Does PH(text) (or PHS(text)) match the sketch under the problem's
// equivalence? Invalid texts never match.
bool verify_text(const HeapSketch& s, ProblemKind kind, std::string_view text);

// Problem kind implied by which parts a sketch carries (labels and numbers
// take precedence over links).
std::optional<ProblemKind> problem_kind_of(const HeapSketch& s);

// |alphabet|! / (|alphabet| - k)!
BigCount falling_factorial(std::size_t n, std::size_t k);

}  // namespace phinfer

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phinfer/alphabet.hpp"

namespace phinfer {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class InvalidText : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownLetter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Suffix links over some node set: target[v] is S(v), kNoNode where undefined.
struct SuffixLinkMap {
  std::vector<NodeId> target;

  SuffixLinkMap() = default;
  explicit SuffixLinkMap(std::size_t node_count) : target(node_count, kNoNode) {}

  [[nodiscard]] std::size_t size() const noexcept { return target.size(); }
  [[nodiscard]] bool defined(NodeId v) const { return target[v] != kNoNode; }
  [[nodiscard]] NodeId operator[](NodeId v) const { return target[v]; }
  NodeId& operator[](NodeId v) { return target[v]; }

  friend bool operator==(const SuffixLinkMap&, const SuffixLinkMap&) = default;
};

// Position heap PH(T): nodes 0..n, node i spelling h_i from the root.
class PositionHeap {
 public:
  struct Child {
    char letter;
    NodeId node;
  };

  [[nodiscard]] std::size_t text_length() const noexcept { return parent_.size() - 1; }
  [[nodiscard]] std::size_t node_count() const noexcept { return parent_.size(); }

  [[nodiscard]] NodeId parent(NodeId v) const { return parent_[v]; }
  // Letter on the edge parent(v) -> v; '\0' at the root.
  [[nodiscard]] char label(NodeId v) const { return label_[v]; }
  [[nodiscard]] std::size_t depth(NodeId v) const { return depth_[v]; }
  // Children in alphabet order.
  [[nodiscard]] std::span<const Child> children(NodeId v) const {
    return {child_list_.data() + child_begin_[v], child_begin_[v + 1] - child_begin_[v]};
  }
  [[nodiscard]] NodeId child(NodeId v, char letter) const;

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }

 private:
  friend struct HeapBuilder;
  explicit PositionHeap(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  Alphabet alphabet_;
  std::vector<NodeId> parent_;
  std::vector<char> label_;
  std::vector<std::size_t> depth_;
  // Children of v are child_list_[child_begin_[v] .. child_begin_[v+1]).
  std::vector<std::size_t> child_begin_;
  std::vector<Child> child_list_;
};

struct HeapWithLinks {
  PositionHeap heap;
  SuffixLinkMap links;
};

// True iff `text` is empty or its last letter occurs nowhere else.
bool is_valid_text(std::string_view text) noexcept;

// Builds PHS(text) in O(|text|) for a constant-size alphabet. Children are
// ordered by `alphabet`. Throws InvalidText or UnknownLetter.
HeapWithLinks build_position_heap(std::string_view text, const Alphabet& alphabet);

// Same, with the alphabet taken as the sorted letters of `text`
// (the empty text gets a placeholder alphabet).
HeapWithLinks build_position_heap(std::string_view text);

// Concatenated edge letters from the root to `v`.
std::string path_label(const PositionHeap& heap, NodeId v);

}  // namespace phinfer

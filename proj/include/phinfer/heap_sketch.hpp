#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phinfer/position_heap.hpp"

namespace phinfer {

struct SketchParts;

// A rooted tree with opaque node ids and optional edge labels, node numbers
// and suffix links: the common input of all inference problems.
//
// Node indices are assigned in insertion order, the root is index 0, and a
// parent always has a smaller index than its children. The tree edge into
// node v is identified with v itself.
class HeapSketch {
 public:
  explicit HeapSketch(std::string root_id = "0");

  // Throws std::invalid_argument on a duplicate id or an unknown parent.
  NodeId add_child(NodeId parent, std::string id, std::optional<char> label = std::nullopt);

  [[nodiscard]] std::size_t node_count() const noexcept { return parent_.size(); }
  [[nodiscard]] static constexpr NodeId root() noexcept { return 0; }
  [[nodiscard]] NodeId parent(NodeId v) const { return parent_[v]; }
  [[nodiscard]] const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
  [[nodiscard]] std::size_t depth(NodeId v) const { return depth_[v]; }
  [[nodiscard]] const std::string& id(NodeId v) const { return ids_[v]; }
  [[nodiscard]] std::optional<NodeId> find(std::string_view id) const;

  // Labels: the edge into v carries label(v); the sketch counts as labeled
  // when the flag is set, and then every edge must carry a letter.
  [[nodiscard]] bool labeled() const noexcept { return labeled_; }
  [[nodiscard]] std::optional<char> label(NodeId v) const { return labels_[v]; }
  void set_label(NodeId v, std::optional<char> label) { labels_[v] = label; }
  // Sets the flag; throws std::invalid_argument if some edge is unlabeled.
  void mark_labeled(bool on);

  [[nodiscard]] bool numbered() const noexcept { return numbers_.has_value(); }
  [[nodiscard]] std::size_t number(NodeId v) const { return (*numbers_)[v]; }
  [[nodiscard]] const std::vector<std::size_t>& numbers() const { return *numbers_; }
  // Throws std::invalid_argument unless `numbers` is a bijection onto
  // 0..n with the root mapped to 0.
  void set_numbers(std::vector<std::size_t> numbers);
  void clear_numbers() { numbers_.reset(); }
  // Node carrying number k; requires numbered().
  [[nodiscard]] std::vector<NodeId> nodes_by_number() const;

  [[nodiscard]] bool has_links() const noexcept { return links_.has_value(); }
  [[nodiscard]] const SuffixLinkMap& links() const { return *links_; }
  void set_links(SuffixLinkMap links);
  void clear_links() { links_.reset(); }

  // Nodes in breadth-first order (children in insertion order).
  [[nodiscard]] std::vector<NodeId> bfs_order() const;

  [[nodiscard]] HeapSketch without_labels() const;
  [[nodiscard]] HeapSketch without_numbers() const;
  [[nodiscard]] HeapSketch without_links() const;

 private:
  friend HeapSketch to_sketch(const HeapWithLinks& phs, SketchParts parts);

  // Appends without touching the id index; the caller guarantees a fresh id.
  NodeId append(NodeId parent, std::string id, std::optional<char> label);
  // The id index covers ids_[0..index_size_); it is completed on demand so
  // sketches derived from heaps never build it unless ids are looked up.
  // Not safe for concurrent first use.
  const std::unordered_map<std::string, NodeId>& index() const;

  std::vector<std::string> ids_;
  mutable std::unordered_map<std::string, NodeId> index_;
  mutable std::size_t index_size_ = 0;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::optional<char>> labels_;
  bool labeled_ = false;
  std::optional<std::vector<std::size_t>> numbers_;
  std::optional<SuffixLinkMap> links_;
};

struct SketchParts {
  bool numbers = true;
  bool labels = true;
  bool links = true;
};

// Sketch of PHS(T) with node i of the heap at sketch index i and id
// std::to_string(i). Parts not requested are left out.
HeapSketch to_sketch(const HeapWithLinks& phs, SketchParts parts = {});

}  // namespace phinfer

#include "phinfer/heap_sketch.hpp"

#include <stdexcept>

namespace phinfer {

HeapSketch::HeapSketch(std::string root_id) {
  ids_.push_back(std::move(root_id));
  parent_.push_back(kNoNode);
  children_.emplace_back();
  depth_.push_back(0);
  labels_.emplace_back();
}

NodeId HeapSketch::add_child(NodeId parent, std::string id, std::optional<char> label) {
  if (parent >= node_count()) throw std::invalid_argument("sketch: unknown parent");
  index();
  if (!index_.emplace(id, node_count()).second) {
    throw std::invalid_argument("sketch: duplicate node id '" + id + "'");
  }
  ++index_size_;
  return append(parent, std::move(id), label);
}

NodeId HeapSketch::append(NodeId parent, std::string id, std::optional<char> label) {
  const NodeId v = node_count();
  ids_.push_back(std::move(id));
  parent_.push_back(parent);
  children_.emplace_back();
  children_[parent].push_back(v);
  depth_.push_back(depth_[parent] + 1);
  labels_.push_back(label);
  if (numbers_) numbers_.reset();
  if (links_) links_->target.push_back(kNoNode);
  return v;
}

const std::unordered_map<std::string, NodeId>& HeapSketch::index() const {
  for (; index_size_ < ids_.size(); ++index_size_) index_.emplace(ids_[index_size_], index_size_);
  return index_;
}

std::optional<NodeId> HeapSketch::find(std::string_view id) const {
  const auto& ix = index();
  const auto it = ix.find(std::string(id));
  if (it == ix.end()) return std::nullopt;
  return it->second;
}

void HeapSketch::mark_labeled(bool on) {
  if (on) {
    for (NodeId v = 1; v < node_count(); ++v) {
      if (!labels_[v]) throw std::invalid_argument("sketch: edge into '" + ids_[v] + "' has no label");
    }
  }
  labeled_ = on;
}

void HeapSketch::set_numbers(std::vector<std::size_t> numbers) {
  if (numbers.size() != node_count()) throw std::invalid_argument("sketch: numbering size mismatch");
  if (numbers[0] != 0) throw std::invalid_argument("sketch: root must be numbered 0");
  std::vector<bool> seen(numbers.size(), false);
  for (std::size_t k : numbers) {
    if (k >= numbers.size() || seen[k]) {
      throw std::invalid_argument("sketch: numbering is not a bijection onto 0..n");
    }
    seen[k] = true;
  }
  numbers_ = std::move(numbers);
}

std::vector<NodeId> HeapSketch::nodes_by_number() const {
  std::vector<NodeId> out(node_count());
  for (NodeId v = 0; v < node_count(); ++v) out[(*numbers_)[v]] = v;
  return out;
}

void HeapSketch::set_links(SuffixLinkMap links) {
  if (links.size() != node_count()) throw std::invalid_argument("sketch: link map size mismatch");
  for (NodeId t : links.target) {
    if (t != kNoNode && t >= node_count()) throw std::invalid_argument("sketch: link to unknown node");
  }
  links_ = std::move(links);
}

std::vector<NodeId> HeapSketch::bfs_order() const {
  std::vector<NodeId> order;
  order.reserve(node_count());
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId c : children_[order[head]]) order.push_back(c);
  }
  return order;
}

HeapSketch HeapSketch::without_labels() const {
  HeapSketch out = *this;
  for (auto& l : out.labels_) l.reset();
  out.labeled_ = false;
  return out;
}

HeapSketch HeapSketch::without_numbers() const {
  HeapSketch out = *this;
  out.numbers_.reset();
  return out;
}

HeapSketch HeapSketch::without_links() const {
  HeapSketch out = *this;
  out.links_.reset();
  return out;
}

HeapSketch to_sketch(const HeapWithLinks& phs, SketchParts parts) {
  const PositionHeap& heap = phs.heap;
  HeapSketch out("0");
  out.ids_.reserve(heap.node_count());
  out.parent_.reserve(heap.node_count());
  out.children_.reserve(heap.node_count());
  out.depth_.reserve(heap.node_count());
  out.labels_.reserve(heap.node_count());
  for (NodeId v = 1; v < heap.node_count(); ++v) {
    std::optional<char> label;
    if (parts.labels) label = heap.label(v);
    out.append(heap.parent(v), std::to_string(v), label);
  }
  if (parts.labels) out.mark_labeled(true);
  if (parts.numbers) {
    std::vector<std::size_t> numbers(heap.node_count());
    for (NodeId v = 0; v < numbers.size(); ++v) numbers[v] = v;
    out.set_numbers(std::move(numbers));
  }
  if (parts.links) out.set_links(phs.links);
  return out;
}

}  // namespace phinfer

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amra/core/types.hpp"

namespace amra {

using NodeId = std::uint32_t;

/// Binary min-heap keyed on (key, h, insertion order) with a position handle
/// per node, so a node can be re-prioritised or removed in O(log n).
/// Ties on key prefer the smaller heuristic value, then the most recent
/// insertion (LIFO) or the oldest (FIFO).
class OpenList {
 public:
  struct Entry {
    NodeId node;
    Cost key;
    Cost h;
    std::uint64_t seq;
  };

  explicit OpenList(TieBreak tie = TieBreak::kLowHeuristicThenLifo) : tie_(tie) {}

  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
  [[nodiscard]] const Entry& top() const { return heap_.front(); }
  [[nodiscard]] Cost min_key() const { return heap_.empty() ? kInfinity : heap_.front().key; }

  [[nodiscard]] bool contains(NodeId n) const noexcept {
    return n < pos_.size() && pos_[n] != kAbsent;
  }

  [[nodiscard]] const Entry* find(NodeId n) const noexcept {
    return contains(n) ? &heap_[pos_[n]] : nullptr;
  }

  /// Insert, or move an existing entry to its new priority.
  void push_or_update(NodeId n, Cost key, Cost h, std::uint64_t seq) {
    if (n >= pos_.size()) pos_.resize(static_cast<std::size_t>(n) + 1, kAbsent);
    if (pos_[n] == kAbsent) {
      heap_.push_back({n, key, h, seq});
      pos_[n] = static_cast<std::int64_t>(heap_.size() - 1);
      sift_up(heap_.size() - 1);
      return;
    }
    const auto i = static_cast<std::size_t>(pos_[n]);
    heap_[i] = {n, key, h, seq};
    sift_up(i);
    sift_down(static_cast<std::size_t>(pos_[n]));
  }

  Entry pop() {
    Entry e = heap_.front();
    erase_at(0);
    return e;
  }

  bool remove(NodeId n) {
    if (!contains(n)) return false;
    erase_at(static_cast<std::size_t>(pos_[n]));
    return true;
  }

  void clear() {
    for (const auto& e : heap_) pos_[e.node] = kAbsent;
    heap_.clear();
  }

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return heap_; }

  /// Recompute every key in place and restore the heap order.
  template <typename Rekey>
  void rekey_all(Rekey&& rekey) {
    for (auto& e : heap_) e.key = rekey(e.node);
    for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
  }

  [[nodiscard]] bool before(const Entry& a, const Entry& b) const noexcept {
    if (a.key != b.key) return a.key < b.key;
    if (a.h != b.h) return a.h < b.h;
    return tie_ == TieBreak::kLowHeuristicThenLifo ? a.seq > b.seq : a.seq < b.seq;
  }

 private:
  static constexpr std::int64_t kAbsent = -1;

  void erase_at(std::size_t i) {
    pos_[heap_[i].node] = kAbsent;
    const std::size_t last = heap_.size() - 1;
    if (i == last) {
      heap_.pop_back();
      return;
    }
    const NodeId moved = heap_[last].node;
    place(i, heap_[last]);
    heap_.pop_back();
    sift_up(i);
    sift_down(static_cast<std::size_t>(pos_[moved]));
  }

  void place(std::size_t i, const Entry& e) {
    heap_[i] = e;
    pos_[e.node] = static_cast<std::int64_t>(i);
  }

  void sift_up(std::size_t i) {
    Entry e = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!before(e, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, e);
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    if (i >= n) return;
    Entry e = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], e)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, e);
  }

  TieBreak tie_;
  std::vector<Entry> heap_;
  std::vector<std::int64_t> pos_;
};

}  // namespace amra

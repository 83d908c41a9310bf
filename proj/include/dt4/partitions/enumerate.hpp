#ifndef DT4_PARTITIONS_ENUMERATE_HPP
#define DT4_PARTITIONS_ENUMERATE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "dt4/partitions/solid_partition.hpp"

namespace dt4 {

namespace detail {

/// Boxes that may extend a lex-prefix: strictly greater than its last box and
/// with every predecessor present.
inline std::vector<Box> extension_candidates(const std::vector<Box>& boxes) {
  if (boxes.empty()) return {Box{0, 0, 0, 0}};
  std::vector<Box> out;
  const Box& last = boxes.back();
  auto present = [&](const Box& b) { return std::binary_search(boxes.begin(), boxes.end(), b); };
  for (const auto& b : boxes) {
    for (int axis = 0; axis < 4; ++axis) {
      Box c = shifted(b, axis);
      if (!(last < c)) continue;
      bool closed = true;
      for (int other = 0; other < 4 && closed; ++other) {
        if (c[other] > 0) closed = present(shifted(c, other, -1));
      }
      if (closed) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Visitor>
void grow(std::vector<Box>& boxes, std::size_t max_n, Visitor& visit) {
  visit(static_cast<const std::vector<Box>&>(boxes));
  if (boxes.size() >= max_n) return;
  for (const auto& c : extension_candidates(boxes)) {
    boxes.push_back(c);
    grow(boxes, max_n, visit);
    boxes.pop_back();
  }
}

}  // namespace detail

/// Depth-first walk over every solid partition with at most max_n boxes.
///
/// Each partition is built exactly once: its lex-sorted box list is grown one
/// box at a time, and every prefix is itself downward closed because the
/// lex-largest box of a solid partition is always removable.
template <class Visitor>
void for_each_partition(std::size_t max_n, Visitor&& visit) {
  std::vector<Box> boxes;
  auto wrapped = [&](const std::vector<Box>& b) { visit(SolidPartition::from_sorted(b)); };
  detail::grow(boxes, max_n, wrapped);
}

/// Visits the subtree of partitions extending `root` (root included), up to max_n boxes.
template <class Visitor>
void for_each_in_subtree(const SolidPartition& root, std::size_t max_n, Visitor&& visit) {
  std::vector<Box> boxes = root.boxes();
  auto wrapped = [&](const std::vector<Box>& b) { visit(SolidPartition::from_sorted(b)); };
  detail::grow(boxes, max_n, wrapped);
}

/// All solid partitions with exactly n boxes, in lexicographic build order.
inline std::vector<SolidPartition> enumerate(std::size_t n) {
  std::vector<SolidPartition> out;
  for_each_partition(n, [&](const SolidPartition& p) {
    if (p.size() == n) out.push_back(p);
  });
  return out;
}

/// Splits the prefix tree at `depth`: returns the partitions of size < depth
/// (handled directly) and the roots of size == depth whose subtrees are disjoint.
struct SubtreeSplit {
  std::vector<SolidPartition> shallow;
  std::vector<SolidPartition> roots;
};

inline SubtreeSplit split_subtrees(std::size_t max_n, std::size_t depth) {
  SubtreeSplit split;
  std::size_t d = std::min(depth, max_n);
  for_each_partition(d, [&](const SolidPartition& p) {
    (p.size() == d ? split.roots : split.shallow).push_back(p);
  });
  return split;
}

/// Every partition with at most max_n boxes in canonical order (size, then lex),
/// enumerated over `threads` workers pulling subtrees from a shared queue.
inline std::vector<SolidPartition> enumerate_up_to(std::size_t max_n, unsigned threads = 1, std::size_t split_depth = 3) {
  SubtreeSplit split = split_subtrees(max_n, split_depth);
  std::vector<std::vector<SolidPartition>> per_root(split.roots.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < split.roots.size(); i = next++) {
      for_each_in_subtree(split.roots[i], max_n, [&](const SolidPartition& p) { per_root[i].push_back(p); });
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<SolidPartition> all = std::move(split.shallow);
  for (auto& chunk : per_root) {
    for (auto& p : chunk) all.push_back(std::move(p));
  }
  std::sort(all.begin(), all.end());
  return all;
}

/// Number of solid partitions of each size 0..max_n.
inline std::vector<std::size_t> count_partitions(std::size_t max_n) {
  std::vector<std::size_t> counts(max_n + 1, 0);
  for_each_partition(max_n, [&](const SolidPartition& p) { ++counts[p.size()]; });
  return counts;
}

}  // namespace dt4

#endif  // DT4_PARTITIONS_ENUMERATE_HPP

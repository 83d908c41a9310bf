#ifndef DT4_PARTITIONS_SOLID_PARTITION_HPP
#define DT4_PARTITIONS_SOLID_PARTITION_HPP

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dt4/errors.hpp"

namespace dt4 {

/// Lattice point (i, j, k, l) of Z_{>=0}^4.
using Box = std::array<int, 4>;

inline Box shifted(Box b, int axis, int by = 1) {
  b[axis] += by;
  return b;
}

/// Finite downward-closed set of boxes, stored lexicographically sorted.
class SolidPartition {
 public:
  SolidPartition() = default;

  /// Validates and sorts; throws InvalidPartition on duplicates, negative
  /// coordinates or a missing predecessor.
  explicit SolidPartition(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    std::sort(boxes_.begin(), boxes_.end());
    if (std::adjacent_find(boxes_.begin(), boxes_.end()) != boxes_.end()) {
      throw InvalidPartition("duplicate box");
    }
    for (const auto& b : boxes_) {
      for (int c : b) {
        if (c < 0) throw InvalidPartition("negative box coordinate in " + box_to_string(b));
      }
      for (int axis = 0; axis < 4; ++axis) {
        if (b[axis] > 0 && !contains(shifted(b, axis, -1))) {
          throw InvalidPartition("box " + box_to_string(b) + " is missing predecessor " +
                                 box_to_string(shifted(b, axis, -1)));
        }
      }
    }
  }

  /// Trusted constructor for already sorted, closed box lists.
  static SolidPartition from_sorted(std::vector<Box> boxes) {
    SolidPartition p;
    p.boxes_ = std::move(boxes);
    return p;
  }

  /// Parses "i,j,k,l;i,j,k,l;..." (empty string is the empty partition).
  static SolidPartition parse(const std::string& text) {
    std::vector<Box> boxes;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      std::stringstream one(item);
      std::string field;
      Box b{};
      int n = 0;
      while (std::getline(one, field, ',')) {
        if (n >= 4) throw InvalidPartition("box with more than four coordinates: " + item);
        try {
          std::size_t used = 0;
          b[n] = std::stoi(field, &used);
          if (field.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(field);
        } catch (const std::exception&) {
          throw InvalidPartition("bad coordinate '" + field + "' in box " + item);
        }
        ++n;
      }
      if (n != 4) throw InvalidPartition("box needs four coordinates: " + item);
      boxes.push_back(b);
    }
    return SolidPartition(std::move(boxes));
  }

  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }

  bool contains(const Box& b) const { return std::binary_search(boxes_.begin(), boxes_.end(), b); }

  bool operator==(const SolidPartition&) const = default;
  /// Canonical order: by size, then lexicographically by sorted box list.
  bool operator<(const SolidPartition& o) const {
    if (boxes_.size() != o.boxes_.size()) return boxes_.size() < o.boxes_.size();
    return boxes_ < o.boxes_;
  }

  static std::string box_to_string(const Box& b) {
    return std::to_string(b[0]) + "," + std::to_string(b[1]) + "," + std::to_string(b[2]) + "," +
           std::to_string(b[3]);
  }

  /// Inverse of parse.
  std::string to_string() const {
    std::string s;
    for (const auto& b : boxes_) {
      if (!s.empty()) s += ";";
      s += box_to_string(b);
    }
    return s;
  }

 private:
  std::vector<Box> boxes_;
};

inline std::ostream& operator<<(std::ostream& os, const SolidPartition& x) { return os << x.to_string(); }

}  // namespace dt4

#endif  // DT4_PARTITIONS_SOLID_PARTITION_HPP

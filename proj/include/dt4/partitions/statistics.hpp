#ifndef DT4_PARTITIONS_STATISTICS_HPP
#define DT4_PARTITIONS_STATISTICS_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dt4/algebra/equivariant_class.hpp"
#include "dt4/partitions/solid_partition.hpp"

namespace dt4 {

/// Multiplicities (n_0, ..., n_{r-1}) of the representation R of a colored partition.
using ColorVector = std::vector<int>;

/// Color of a box under Z_r acting with weights (1, -1, 0, 0): (i - j) mod r.
inline int box_color(const Box& b, int r) {
  int c = (b[0] - b[1]) % r;
  return c < 0 ? c + r : c;
}

inline ColorVector color_vector(const SolidPartition& p, int r) {
  if (r < 1) throw std::invalid_argument("color_vector: r must be positive");
  ColorVector n(static_cast<std::size_t>(r), 0);
  for (const auto& b : p.boxes()) ++n[static_cast<std::size_t>(box_color(b, r))];
  return n;
}

/// Boxes whose coordinates off `axis` (1-based) agree and are below the `axis` one.
inline int mu_axis(const SolidPartition& p, int axis) {
  if (axis < 1 || axis > 4) throw std::invalid_argument("mu_axis: axis must be in 1..4");
  const int i = axis - 1;
  int count = 0;
  for (const auto& b : p.boxes()) {
    int others[3];
    int n = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) others[n++] = b[j];
    }
    if (others[0] == others[1] && others[1] == others[2] && others[0] < b[i]) ++count;
  }
  return count;
}

/// Sign exponent of the canonical orientation: boxes (i, i, i, j) with j > i.
inline int mu(const SolidPartition& p) { return mu_axis(p, 4); }

/// Boxes with l != min(i, j, k).
inline int k_stat(const SolidPartition& p) {
  int count = 0;
  for (const auto& b : p.boxes()) {
    if (b[3] != std::min({b[0], b[1], b[2]})) ++count;
  }
  return count;
}

/// a_{ij} = #{boxes of the form (a + i, a, b + j, b)}, finitely supported.
inline std::map<std::pair<int, int>, int> a_stats(const SolidPartition& p) {
  std::map<std::pair<int, int>, int> a;
  for (const auto& b : p.boxes()) ++a[{b[0] - b[1], b[2] - b[3]}];
  return a;
}

/// C = a_00 - (1/2) sum_{k,m} (a_{km} - a_{k+1,m} - a_{k,m+1} + a_{k+1,m+1})^2.
inline int c_stat(const SolidPartition& p) {
  auto a = a_stats(p);
  auto at = [&](int i, int j) {
    auto it = a.find({i, j});
    return it == a.end() ? 0 : it->second;
  };
  // The mixed difference at (k, m) only involves a at (k..k+1, m..m+1), so it
  // can be nonzero only when (k, m) is within one step below a support point.
  std::vector<std::pair<int, int>> window;
  for (const auto& [key, v] : a) {
    for (int dk = -1; dk <= 0; ++dk) {
      for (int dm = -1; dm <= 0; ++dm) window.emplace_back(key.first + dk, key.second + dm);
    }
  }
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  long long squares = 0;
  for (const auto& [k, m] : window) {
    long long d = at(k, m) - at(k + 1, m) - at(k, m + 1) + at(k + 1, m + 1);
    squares += d * d;
  }
  if (squares % 2 != 0) throw std::logic_error("c_stat: odd sum of squared mixed differences");
  return at(0, 0) - static_cast<int>(squares / 2);
}

inline Monomial box_monomial(const Box& b) {
  Monomial m;
  m.a = b;
  return m;
}

/// Z_pi = sum over boxes of t1^i t2^j t3^k t4^l.
inline EquivariantClass character(const SolidPartition& p) {
  EquivariantClass z;
  for (const auto& b : p.boxes()) z.add_term(box_monomial(b), 1);
  return z;
}

/// Z_pi^{(l)}: the boxes of color l mod r.
inline EquivariantClass colored_character(const SolidPartition& p, int r, int l) {
  if (r < 1 || l < 0 || l >= r) throw std::invalid_argument("colored_character: need 0 <= l < r");
  EquivariantClass z;
  for (const auto& b : p.boxes()) {
    if (box_color(b, r) == l) z.add_term(box_monomial(b), 1);
  }
  return z;
}

}  // namespace dt4

#endif  // DT4_PARTITIONS_STATISTICS_HPP

#ifndef DT4_ENGINE_CHECKS_HPP
#define DT4_ENGINE_CHECKS_HPP

#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dt4/algebra/fields.hpp"
#include "dt4/engine/compare.hpp"
#include "dt4/engine/lhs.hpp"
#include "dt4/engine/report.hpp"
#include "dt4/partitions/enumerate.hpp"
#include "dt4/partitions/statistics.hpp"
#include "dt4/series/closed_forms.hpp"
#include "dt4/vertex/vertex.hpp"

namespace dt4 {

/// Records produced by one structural check plus the number of partitions it visited.
struct CheckResult {
  std::vector<CoefficientRecord> records;
  std::uint64_t partitions = 0;
};

namespace detail {

inline Exponent size_exponent(const SolidPartition& p) { return {static_cast<int>(p.size())}; }

inline std::string valuation_text(int v) { return v == INT_MAX ? "inf" : std::to_string(v); }

/// Every (partition, r) pair with at most max_boxes boxes, partitions outermost.
inline std::vector<std::pair<SolidPartition, int>> partition_r_pairs(int max_boxes, const std::vector<int>& rs,
                                                                     unsigned threads) {
  std::vector<std::pair<SolidPartition, int>> out;
  for (const auto& p : enumerate_up_to(static_cast<std::size_t>(max_boxes), threads)) {
    for (int r : rs) out.emplace_back(p, r);
  }
  return out;
}

inline void require_positive_rs(const std::vector<int>& rs) {
  if (rs.empty()) throw ConfigError("check needs at least one r");
  for (int r : rs) {
    if (r < 1) throw ConfigError("r must be >= 1, got " + std::to_string(r));
  }
}

}  // namespace detail

/// lhs_orbifold with m := s4 against the three-dimensional closed form.
inline CheckResult check_dimension_reduction(int r, int cutoff, ExecutionContext& ctx) {
  ExactField field;
  ContributionTable t = orbifold_contributions(r, cutoff, ctx);
  auto reduced = lhs_orbifold_from(t, r, cutoff, field, ctx.threads).map_coefficients([](const FactoredRational& c) {
    return c.substitute_m(LinearForm::s4());
  });
  return {compare(reduced, rhs_orbifold_3d(field, r, cutoff)), t.partitions.size()};
}

/// Every nonconstant coefficient has m-valuation exactly 1 and (s1+s2)-valuation >= 1.
inline CheckResult check_divisibility(int r, int cutoff, ExecutionContext& ctx) {
  ExactField field;
  ContributionTable t = orbifold_contributions(r, cutoff, ctx);
  auto lhs = lhs_orbifold_from(t, r, cutoff, field, ctx.threads);
  const LinearForm s12 = LinearForm::s1() + LinearForm::s2();
  CheckResult out;
  out.partitions = t.partitions.size();
  for (const auto& [e, c] : lhs.terms()) {
    if (total_degree(e) == 0) continue;
    int vm = c.valuation(LinearForm::m());
    int v12 = c.valuation(s12);
    out.records.push_back({e, "valuations at m and s1+s2",
                           "m:" + detail::valuation_text(vm) + " s1+s2:" + detail::valuation_text(v12),
                           "m:1 s1+s2:>=1", vm == 1 && v12 >= 1});
  }
  return out;
}

/// Every coefficient of log(lhs_orbifold) has at most a simple pole along s3.
inline CheckResult check_pole_order(int r, int cutoff, ExecutionContext& ctx) {
  ExactField field;
  ContributionTable t = orbifold_contributions(r, cutoff, ctx);
  auto log_lhs = lhs_orbifold_from(t, r, cutoff, field, ctx.threads).log();
  CheckResult out;
  out.partitions = t.partitions.size();
  for (const auto& [e, c] : log_lhs.terms()) {
    int v = c.valuation(LinearForm::s3());
    out.records.push_back({e, "s3-valuation of log coefficient", "s3:" + detail::valuation_text(v), "s3:>=-1",
                           v >= -1});
  }
  return out;
}

/// (-1)^{mu^i} e(-v_tilde^i) for i = 1, 2, 3 against the default axis 4.
inline CheckResult check_axis_canonicity(int max_boxes, ExecutionContext& ctx) {
  auto parts = enumerate_up_to(static_cast<std::size_t>(max_boxes), ctx.threads);
  const Chart chart = Chart::standard();
  std::vector<CoefficientRecord> records(parts.size() * 3);
  parallel_for(parts.size(), ctx.threads, [&](std::size_t i) {
    FactoredRational reference = contribution(parts[i], chart, 4);
    for (int axis = 1; axis <= 3; ++axis) {
      FactoredRational x = contribution(parts[i], chart, axis);
      records[i * 3 + static_cast<std::size_t>(axis - 1)] = {
          detail::size_exponent(parts[i]), "axis " + std::to_string(axis) + " vs 4 at " + parts[i].to_string(),
          x.to_string(), reference.to_string(), x == reference};
    }
  });
  return {std::move(records), parts.size()};
}

/// zr_fix(v_tilde) = v_tilde^{Z_r} as classes.
inline CheckResult check_zr_consistency(int max_boxes, const std::vector<int>& rs, ExecutionContext& ctx) {
  detail::require_positive_rs(rs);
  auto items = detail::partition_r_pairs(max_boxes, rs, ctx.threads);
  const Chart chart = Chart::standard();
  std::vector<CoefficientRecord> records(items.size());
  parallel_for(items.size(), ctx.threads, [&](std::size_t i) {
    const auto& [p, r] = items[i];
    EquivariantClass a = zr_fix(v_tilde(p, chart), r);
    EquivariantClass b = v_tilde_zr(p, r);
    records[i] = {color_vector(p, r), "r=" + std::to_string(r) + " " + p.to_string(), a.to_string(), b.to_string(),
                  a == b};
  });
  return {std::move(records), items.size() / rs.size()};
}

/// Constant term in (x, t3, y) of f(x, x^-1, t3, t3^-1, y).
inline std::int64_t cpi_constant_term(const EquivariantClass& f) {
  std::int64_t c = 0;
  for (const auto& [m, k] : f.terms()) {
    if (m.a[0] == m.a[1] && m.a[2] == m.a[3] && m.b == 0) c += k;
  }
  return c;
}

/// C^pi equals the constant term of v_tilde^{Z_r}, and C^pi <= -a_00 < 0.
inline CheckResult check_cpi(int max_boxes, const std::vector<int>& rs, ExecutionContext& ctx) {
  detail::require_positive_rs(rs);
  auto items = detail::partition_r_pairs(max_boxes, rs, ctx.threads);
  std::vector<CoefficientRecord> records(items.size() * 2);
  std::vector<char> used(items.size(), 0);
  parallel_for(items.size(), ctx.threads, [&](std::size_t i) {
    const auto& [p, r] = items[i];
    if (p.size() == 0) return;
    used[i] = 1;
    const std::string where = "r=" + std::to_string(r) + " " + p.to_string();
    int c = c_stat(p);
    std::int64_t ct = cpi_constant_term(v_tilde_zr(p, r));
    auto a = a_stats(p);
    auto it = a.find({0, 0});
    int a00 = it == a.end() ? 0 : it->second;
    records[2 * i] = {color_vector(p, r), "C = constant term at " + where, std::to_string(c), std::to_string(ct),
                      c == ct};
    records[2 * i + 1] = {color_vector(p, r), "C <= -a00 < 0 at " + where, std::to_string(c),
                          std::to_string(-a00), c <= -a00 && -a00 < 0};
  });
  CheckResult out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!used[i]) continue;
    out.records.push_back(std::move(records[2 * i]));
    out.records.push_back(std::move(records[2 * i + 1]));
  }
  out.partitions = items.size() / rs.size();
  return out;
}

/// (-1)^mu e(-[v - y conj(Z0)]) = (-1)^{|pi|_0 + mu} e(-[v - y^-1 Z0]).
inline CheckResult check_alt_sign(int max_boxes, const std::vector<int>& rs, ExecutionContext& ctx) {
  detail::require_positive_rs(rs);
  auto items = detail::partition_r_pairs(max_boxes, rs, ctx.threads);
  const Chart chart = Chart::standard();
  std::vector<CoefficientRecord> records(items.size());
  parallel_for(items.size(), ctx.threads, [&](std::size_t i) {
    const auto& [p, r] = items[i];
    EquivariantClass v = v_dt_zr(p, r);
    EquivariantClass z0 = colored_character(p, r, 0);
    ColorVector colors = color_vector(p, r);
    FactoredRational a = euler_class(-(v - z0.dual_t() * EquivariantClass(Monomial::y())), chart);
    FactoredRational b = euler_class(-(v - z0 * EquivariantClass(Monomial::y(-1))), chart);
    if (parity_sign(mu(p)) < 0) a = -a;
    if (parity_sign(colors[0] + mu(p)) < 0) b = -b;
    records[i] = {colors, "r=" + std::to_string(r) + " " + p.to_string(), a.to_string(), b.to_string(), a == b};
  });
  return {std::move(records), items.size() / rs.size()};
}

/// Sequential streaming counts against the parallel split enumeration.
inline CheckResult check_partition_count(int max_n, ExecutionContext& ctx) {
  auto sequential = count_partitions(static_cast<std::size_t>(max_n));
  std::vector<std::size_t> parallel(static_cast<std::size_t>(max_n) + 1, 0);
  auto parts = enumerate_up_to(static_cast<std::size_t>(max_n), ctx.threads);
  for (const auto& p : parts) ++parallel[p.size()];
  CheckResult out;
  out.partitions = parts.size();
  for (int n = 0; n <= max_n; ++n) {
    auto k = static_cast<std::size_t>(n);
    out.records.push_back({{n}, "solid partitions of " + std::to_string(n), std::to_string(sequential[k]),
                           std::to_string(parallel[k]), sequential[k] == parallel[k]});
  }
  return out;
}

}  // namespace dt4

#endif  // DT4_ENGINE_CHECKS_HPP

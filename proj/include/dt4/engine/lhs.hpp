#ifndef DT4_ENGINE_LHS_HPP
#define DT4_ENGINE_LHS_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "dt4/algebra/fields.hpp"
#include "dt4/engine/cache.hpp"
#include "dt4/partitions/enumerate.hpp"
#include "dt4/partitions/statistics.hpp"
#include "dt4/series/macmahon.hpp"
#include "dt4/series/truncated_series.hpp"
#include "dt4/vertex/geometry.hpp"
#include "dt4/vertex/vertex.hpp"

namespace dt4 {

/// Threads and the contribution cache shared by one engine run.
struct ExecutionContext {
  unsigned threads = 1;
  ContributionCache* cache = nullptr;
};

/// Runs fn(i) for i in [0, n) on `threads` workers pulling indices from a shared
/// counter. The first exception thrown is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

/// Signed contribution of one partition at one toric chart, through the cache.
inline FactoredRational cached_contribution(const SolidPartition& p, const Chart& chart, ExecutionContext& ctx) {
  auto compute = [&] {
    FactoredRational e = euler_class(-v_tilde(p, chart), chart);
    return std::pair{e, parity_sign(mu(p))};
  };
  if (ctx.cache == nullptr) {
    auto [e, sign] = compute();
    return sign < 0 ? -e : e;
  }
  return ctx.cache->get_or_compute("chart:" + chart.describe(), p, compute);
}

inline FactoredRational cached_contribution_orbifold(const SolidPartition& p, int r, ExecutionContext& ctx) {
  auto compute = [&] {
    FactoredRational e = euler_class(-v_tilde_zr(p, r), Chart::standard());
    return std::pair{e, parity_sign(mu(p))};
  };
  if (ctx.cache == nullptr) {
    auto [e, sign] = compute();
    return sign < 0 ? -e : e;
  }
  return ctx.cache->get_or_compute(OrbifoldGeometry{r}.describe(), p, compute);
}

/// Per-partition contributions, in the canonical partition order.
struct ContributionTable {
  std::vector<SolidPartition> partitions;
  std::vector<FactoredRational> values;
};

inline ContributionTable chart_contributions(const Chart& chart, int cutoff, ExecutionContext& ctx) {
  ContributionTable t;
  t.partitions = enumerate_up_to(static_cast<std::size_t>(cutoff), ctx.threads);
  t.values.resize(t.partitions.size());
  parallel_for(t.partitions.size(), ctx.threads,
               [&](std::size_t i) { t.values[i] = cached_contribution(t.partitions[i], chart, ctx); });
  return t;
}

inline ContributionTable orbifold_contributions(int r, int cutoff, ExecutionContext& ctx) {
  ContributionTable t;
  t.partitions = enumerate_up_to(static_cast<std::size_t>(cutoff), ctx.threads);
  t.values.resize(t.partitions.size());
  parallel_for(t.partitions.size(), ctx.threads,
               [&](std::size_t i) { t.values[i] = cached_contribution_orbifold(t.partitions[i], r, ctx); });
  return t;
}

/// Sums lifted contributions into a series, grouping by exponent first so each
/// coefficient is one bulk field sum in a fixed order.
template <CoefficientField F, class ExponentOf>
TruncatedSeries<F> assemble(const F& field, std::vector<std::string> vars, int cutoff, const ContributionTable& t,
                            ExponentOf&& exponent_of, unsigned threads) {
  using V = typename F::value_type;
  std::map<Exponent, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < t.partitions.size(); ++i) groups[exponent_of(t.partitions[i])].push_back(i);
  std::vector<std::pair<Exponent, std::vector<std::size_t>>> work(groups.begin(), groups.end());
  std::vector<V> sums(work.size());
  parallel_for(work.size(), threads, [&](std::size_t g) {
    std::vector<V> lifted;
    lifted.reserve(work[g].second.size());
    for (std::size_t i : work[g].second) lifted.push_back(field.lift(t.values[i]));
    sums[g] = field.sum(lifted);
  });
  TruncatedSeries<F> s(field, std::move(vars), cutoff);
  for (std::size_t g = 0; g < work.size(); ++g) s.add_term(work[g].first, sums[g]);
  return s;
}

/// Single-chart generating series sum_pi contribution(pi, chart) q^{|pi|}.
template <CoefficientField F>
TruncatedSeries<F> chart_series(const F& field, const ContributionTable& t, int cutoff, unsigned threads) {
  return assemble(
      field, single_variable(), cutoff, t, [](const SolidPartition& p) { return Exponent{static_cast<int>(p.size())}; },
      threads);
}

/// Product over charts of single-chart series, from precomputed tables.
template <CoefficientField F>
TruncatedSeries<F> lhs_toric_from(const std::vector<ContributionTable>& per_chart, int cutoff, const F& field,
                                  unsigned threads = 1) {
  auto result = TruncatedSeries<F>::one(field, single_variable(), cutoff);
  for (const auto& t : per_chart) result *= chart_series(field, t, cutoff, threads);
  return result;
}

/// Toric left-hand side: the sum over chart-tuples of partitions factors as the
/// product over charts of single-chart series.
template <CoefficientField F>
TruncatedSeries<F> lhs_toric(const ToricGeometry& geom, int cutoff, const F& field, ExecutionContext& ctx) {
  std::vector<ContributionTable> tables;
  for (const auto& chart : geom.charts) tables.push_back(chart_contributions(chart, cutoff, ctx));
  return lhs_toric_from(tables, cutoff, field, ctx.threads);
}

template <CoefficientField F>
TruncatedSeries<F> lhs_orbifold_from(const ContributionTable& t, int r, int cutoff, const F& field,
                                     unsigned threads = 1) {
  return assemble(
      field, color_variables(r), cutoff, t, [r](const SolidPartition& p) { return color_vector(p, r); }, threads);
}

/// sum_pi (-1)^mu e(-v_tilde^{Z_r}) q_0^{n_0} ... q_{r-1}^{n_{r-1}}.
template <CoefficientField F>
TruncatedSeries<F> lhs_orbifold(int r, int cutoff, const F& field, ExecutionContext& ctx) {
  return lhs_orbifold_from(orbifold_contributions(r, cutoff, ctx), r, cutoff, field, ctx.threads);
}

}  // namespace dt4

#endif  // DT4_ENGINE_LHS_HPP

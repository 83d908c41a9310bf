#ifndef DT4_ENGINE_TASK_HPP
#define DT4_ENGINE_TASK_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dt4/algebra/fields.hpp"
#include "dt4/algebra/modular.hpp"
#include "dt4/engine/cache.hpp"
#include "dt4/engine/checks.hpp"
#include "dt4/engine/compare.hpp"
#include "dt4/engine/lhs.hpp"
#include "dt4/engine/report.hpp"
#include "dt4/errors.hpp"
#include "dt4/series/closed_forms.hpp"
#include "dt4/vertex/geometry.hpp"

namespace dt4 {

enum class TaskKind {
  toric_identity,
  orbifold_identity,
  dimension_reduction,
  divisibility,
  pole_order,
  axis_canonicity,
  zr_consistency,
  cpi,
  alt_sign,
  partition_count,
};

inline const std::vector<std::pair<TaskKind, std::string>>& task_kind_names() {
  static const std::vector<std::pair<TaskKind, std::string>> names = {
      {TaskKind::toric_identity, "toric-identity"},
      {TaskKind::orbifold_identity, "orbifold-identity"},
      {TaskKind::dimension_reduction, "dimension-reduction"},
      {TaskKind::divisibility, "divisibility"},
      {TaskKind::pole_order, "pole-order"},
      {TaskKind::axis_canonicity, "axis-canonicity"},
      {TaskKind::zr_consistency, "zr-consistency"},
      {TaskKind::cpi, "cpi"},
      {TaskKind::alt_sign, "alt-sign"},
      {TaskKind::partition_count, "partition-count"},
  };
  return names;
}

inline std::string to_string(TaskKind k) {
  for (const auto& [kind, name] : task_kind_names()) {
    if (kind == k) return name;
  }
  return "unknown";
}

inline TaskKind task_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : task_kind_names()) {
    if (name == s) return kind;
  }
  throw ConfigError("unknown task kind '" + s + "'");
}

enum class Mode { exact, modp };

inline std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "modp"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "modp") return Mode::modp;
  throw ConfigError("mode must be exact or modp, got '" + s + "'");
}

struct VerificationTask {
  TaskKind kind = TaskKind::toric_identity;
  std::optional<ToricGeometry> geometry;  // toric-identity only
  int r = 0;                              // orbifold kinds
  std::vector<int> r_values;              // zr-consistency, cpi, alt-sign
  int cutoff = 0;                         // series order, or the box bound for per-partition checks
  Mode mode = Mode::exact;
  std::uint64_t prime = kDefaultPrime;
  int trials = 5;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string cache_dir;
  bool perturb_rhs = false;  // testing aid: adds 1 to the first-order rhs coefficient

  bool uses_single_r() const {
    return kind == TaskKind::orbifold_identity || kind == TaskKind::dimension_reduction ||
           kind == TaskKind::divisibility || kind == TaskKind::pole_order;
  }
  bool uses_r_list() const {
    return kind == TaskKind::zr_consistency || kind == TaskKind::cpi || kind == TaskKind::alt_sign;
  }
  /// Checks that substitute linear forms for m run only in exact mode.
  bool exact_only() const {
    return kind == TaskKind::dimension_reduction || kind == TaskKind::divisibility || kind == TaskKind::pole_order;
  }
  /// Kinds whose values are exact classes or integers; they ignore the mode.
  bool mode_independent() const {
    return kind == TaskKind::axis_canonicity || uses_r_list() || kind == TaskKind::partition_count;
  }

  /// Default r lists for the per-partition orbifold checks.
  std::vector<int> effective_r_values() const {
    if (!r_values.empty()) return r_values;
    if (kind == TaskKind::zr_consistency) return {2, 3, 4};
    return {2, 3};
  }

  /// Throws ConfigError on a malformed task.
  void validate() const {
    if (cutoff < 0) throw ConfigError("order must be >= 0");
    if (cutoff > 12) throw ConfigError("order above 12 is out of range for this engine");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (kind == TaskKind::toric_identity && !geometry) throw ConfigError("toric-identity needs a geometry");
    if (uses_single_r() && r < 1) throw ConfigError("r must be >= 1, got " + std::to_string(r));
    if (uses_r_list()) {
      for (int x : effective_r_values()) {
        if (x < 1) throw ConfigError("r must be >= 1, got " + std::to_string(x));
      }
    }
    if (perturb_rhs && !(kind == TaskKind::toric_identity || kind == TaskKind::orbifold_identity)) {
      throw ConfigError("perturb-rhs applies only to the identity kinds");
    }
    if (mode == Mode::modp) {
      if (exact_only()) throw ConfigError(to_string(kind) + " substitutes m and runs only in exact mode");
      if (trials < 1) throw ConfigError("trials must be >= 1");
      validate_prime(prime, cutoff);
    }
  }

  /// Task echo for the report; threads and the cache directory are left out so
  /// reports stay identical across execution settings.
  nlohmann::json echo() const {
    nlohmann::json j;
    j["kind"] = to_string(kind);
    if (kind == TaskKind::toric_identity && geometry) {
      j["geometry"] = geometry->name;
      nlohmann::json charts = nlohmann::json::array();
      for (const auto& c : geometry->charts) charts.push_back(c.describe());
      j["charts"] = charts;
    }
    if (uses_single_r()) j["r"] = r;
    if (uses_r_list()) j["r_values"] = effective_r_values();
    j["order"] = cutoff;
    if (!mode_independent()) j["mode"] = to_string(mode);
    if (perturb_rhs) j["perturb_rhs"] = true;
    return j;
  }
};

namespace detail {

inline std::uint64_t rational_degree(const FactoredRational& x) {
  return static_cast<std::uint64_t>(std::max(0, x.numerator().degree()) + x.denominator_degree());
}

/// Degree of the cleared difference of any lhs and rhs coefficient: the lhs
/// sums and products of contributions, the rhs a polynomial of degree at most
/// `cutoff` in the exponents.
inline std::uint64_t identity_degree_bound(const std::vector<const ContributionTable*>& tables,
                                           const std::vector<FactoredRational>& exponents, int cutoff) {
  std::uint64_t d = 0;
  for (const auto* t : tables) {
    for (const auto& v : t->values) d += rational_degree(v);
  }
  for (const auto& e : exponents) d += static_cast<std::uint64_t>(cutoff) * rational_degree(e);
  return d;
}

inline void run_identity(const VerificationTask& task, ExecutionContext& ctx, Report& report) {
  std::vector<ContributionTable> tables;
  std::vector<FactoredRational> exponents;
  if (task.kind == TaskKind::toric_identity) {
    for (const auto& chart : task.geometry->charts) tables.push_back(chart_contributions(chart, task.cutoff, ctx));
    exponents = {exponent_toric(*task.geometry)};
  } else {
    tables.push_back(orbifold_contributions(task.r, task.cutoff, ctx));
    exponents = {exponent_a_series(task.r), exponent_tilde()};
  }
  for (const auto& t : tables) report.partitions_processed += t.partitions.size();

  auto perturbed = [&](auto rhs) {
    if (task.perturb_rhs) {
      Exponent e(rhs.vars().size(), 0);
      e[0] = 1;
      rhs.add_term(e, rhs.field().from_rational(mpq_class(1)));
    }
    return rhs;
  };
  auto records_in = [&](const auto& field) {
    if (task.kind == TaskKind::toric_identity) {
      return compare(lhs_toric_from(tables, task.cutoff, field, ctx.threads),
                     perturbed(rhs_toric(field, *task.geometry, task.cutoff)));
    }
    return compare(lhs_orbifold_from(tables.front(), task.r, task.cutoff, field, ctx.threads),
                   perturbed(rhs_orbifold(field, task.r, task.cutoff)));
  };

  if (task.mode == Mode::exact) {
    report.coefficients = records_in(ExactField{});
    return;
  }
  ModularRun run = run_modular_trials(task.prime, task.trials, task.seed,
                                      [&](const PrimeField& field) { return records_in(field); });
  report.coefficients = merge_trials(run.per_trial);
  report.prime = task.prime;
  report.trials = task.trials;
  report.seed = task.seed;
  for (const auto& s : run.samples) report.sample_points.push_back(s.point);
  std::vector<const ContributionTable*> ptrs;
  for (const auto& t : tables) ptrs.push_back(&t);
  std::uint64_t degree = identity_degree_bound(ptrs, exponents, task.cutoff);
  report.degree_bound = degree;
  report.failure_probability_bound = failure_bound(degree, task.prime, task.trials);
}

inline CheckResult run_check(const VerificationTask& task, ExecutionContext& ctx) {
  switch (task.kind) {
    case TaskKind::dimension_reduction:
      return check_dimension_reduction(task.r, task.cutoff, ctx);
    case TaskKind::divisibility:
      return check_divisibility(task.r, task.cutoff, ctx);
    case TaskKind::pole_order:
      return check_pole_order(task.r, task.cutoff, ctx);
    case TaskKind::axis_canonicity:
      return check_axis_canonicity(task.cutoff, ctx);
    case TaskKind::zr_consistency:
      return check_zr_consistency(task.cutoff, task.effective_r_values(), ctx);
    case TaskKind::cpi:
      return check_cpi(task.cutoff, task.effective_r_values(), ctx);
    case TaskKind::alt_sign:
      return check_alt_sign(task.cutoff, task.effective_r_values(), ctx);
    case TaskKind::partition_count:
      return check_partition_count(task.cutoff, ctx);
    default:
      throw ConfigError("not a check kind: " + to_string(task.kind));
  }
}

}  // namespace detail

/// Runs one task. Configuration and evaluation errors are reported with status
/// error rather than thrown. `cache` may be shared across runs; when null a
/// cache on task.cache_dir (or in memory) is used for this run only.
inline Report run(const VerificationTask& task, ContributionCache* cache = nullptr) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.task = task.echo();
  try {
    task.validate();
    std::optional<ContributionCache> local;
    if (cache == nullptr) {
      local.emplace(task.cache_dir);
      cache = &*local;
    }
    std::uint64_t hits0 = cache->hits();
    std::uint64_t misses0 = cache->misses();
    ExecutionContext ctx{task.threads, cache};
    if (task.kind == TaskKind::toric_identity || task.kind == TaskKind::orbifold_identity) {
      detail::run_identity(task, ctx, report);
    } else {
      CheckResult c = detail::run_check(task, ctx);
      report.coefficients = std::move(c.records);
      report.partitions_processed = c.partitions;
    }
    report.cache_hits = cache->hits() - hits0;
    report.cache_misses = cache->misses() - misses0;
    report.finalize();
  } catch (const DegeneratePointError& e) {
    report.fail_with(ErrorKind::degenerate, e.what());
  } catch (const ConfigError& e) {
    report.fail_with(ErrorKind::config, e.what());
  } catch (const ZeroFormError& e) {
    // Only reachable through a custom chart whose weights force a fixed term.
    report.fail_with(ErrorKind::config, e.what());
  } catch (const FixedTermError& e) {
    report.fail_with(ErrorKind::config, e.what());
  } catch (const std::invalid_argument& e) {
    report.fail_with(ErrorKind::config, e.what());
  } catch (const std::exception& e) {
    report.fail_with(ErrorKind::internal, e.what());
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace dt4

#endif  // DT4_ENGINE_TASK_HPP

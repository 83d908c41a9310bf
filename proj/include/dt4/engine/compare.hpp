#ifndef DT4_ENGINE_COMPARE_HPP
#define DT4_ENGINE_COMPARE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dt4/algebra/fields.hpp"
#include "dt4/algebra/modular.hpp"
#include "dt4/engine/report.hpp"
#include "dt4/errors.hpp"
#include "dt4/series/truncated_series.hpp"

namespace dt4 {

namespace detail {

template <CoefficientField F>
std::set<Exponent> support_union(const TruncatedSeries<F>& a, const TruncatedSeries<F>& b) {
  std::set<Exponent> out;
  for (const auto& [e, c] : a.terms()) out.insert(e);
  for (const auto& [e, c] : b.terms()) out.insert(e);
  return out;
}

inline void check_same_shape(const std::vector<std::string>& va, int ca, const std::vector<std::string>& vb, int cb) {
  if (va != vb || ca != cb) throw std::invalid_argument("compared series differ in variables or cutoff");
}

}  // namespace detail

/// Coefficientwise comparison over one field. Exponents appearing on either
/// side are listed in increasing order; equality is the field's equality.
template <CoefficientField F>
std::vector<CoefficientRecord> compare(const TruncatedSeries<F>& lhs, const TruncatedSeries<F>& rhs) {
  detail::check_same_shape(lhs.vars(), lhs.cutoff(), rhs.vars(), rhs.cutoff());
  const F& field = lhs.field();
  std::vector<CoefficientRecord> out;
  for (const auto& e : detail::support_union(lhs, rhs)) {
    auto a = lhs.coefficient(e);
    auto b = rhs.coefficient(e);
    out.push_back({e, "", field.format(a), field.format(b), field.equal(a, b)});
  }
  return out;
}

/// Merges per-trial modular comparisons: lhs/rhs become arrays of residues,
/// one per trial, and a coefficient is equal only if it agrees in every trial.
inline std::vector<CoefficientRecord> merge_trials(const std::vector<std::vector<CoefficientRecord>>& per_trial) {
  std::set<Exponent> all;
  std::vector<std::map<Exponent, const CoefficientRecord*>> index(per_trial.size());
  for (std::size_t t = 0; t < per_trial.size(); ++t) {
    for (const auto& r : per_trial[t]) {
      all.insert(r.exponents);
      index[t][r.exponents] = &r;
    }
  }
  std::vector<CoefficientRecord> out;
  for (const auto& e : all) {
    CoefficientRecord merged{e, "", nlohmann::json::array(), nlohmann::json::array(), true};
    for (const auto& trial : index) {
      auto it = trial.find(e);
      if (it == trial.end()) {
        // Absent from both sides in this trial: both residues are zero.
        merged.lhs.push_back("0");
        merged.rhs.push_back("0");
        continue;
      }
      merged.lhs.push_back(it->second->lhs);
      merged.rhs.push_back(it->second->rhs);
      merged.equal = merged.equal && it->second->equal;
    }
    out.push_back(std::move(merged));
  }
  return out;
}

/// Outcome of running a modular computation over several sample points.
struct ModularRun {
  std::vector<std::vector<CoefficientRecord>> per_trial;
  std::vector<PrimeSample> samples;
};

/// Runs `body(field)` for `trials` independent sample points drawn from `seed`.
/// A point where some denominator vanishes is redrawn, at most kResampleLimit
/// times per trial; after that DegeneratePointError propagates.
inline ModularRun run_modular_trials(
    std::uint64_t prime, int trials, std::uint64_t seed,
    const std::function<std::vector<CoefficientRecord>(const PrimeField&)>& body) {
  ModularRun run;
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      PrimeField field{PrimeSample::draw(prime, seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(attempt))};
      try {
        run.per_trial.push_back(body(field));
        run.samples.push_back(field.sample);
        break;
      } catch (const DegeneratePointError& e) {
        if (attempt + 1 >= kResampleLimit) {
          throw DegeneratePointError("trial " + std::to_string(t) + ": no usable sample point after " +
                                     std::to_string(kResampleLimit) + " draws (" + e.what() + ")");
        }
      }
    }
  }
  return run;
}

/// Schwartz-Zippel bound (D/p)^trials formatted in scientific notation; a
/// nonzero polynomial of degree D vanishes at a uniform point with probability <= D/(p-1).
inline std::string failure_bound(std::uint64_t degree, std::uint64_t prime, int trials) {
  long double per_trial = static_cast<long double>(degree) / static_cast<long double>(prime - 1);
  if (per_trial > 1) per_trial = 1;
  long double total = std::pow(per_trial, static_cast<long double>(trials));
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << static_cast<double>(total);
  return out.str();
}

/// Rejects primes that cannot invert the factorials the series code divides by.
inline void validate_prime(std::uint64_t prime, int cutoff) {
  if (!mod::is_prime(prime)) throw ConfigError("--prime " + std::to_string(prime) + " is not prime");
  unsigned __int128 fact = 1;
  for (int k = 2; k <= cutoff; ++k) {
    fact *= static_cast<unsigned>(k);
    if (fact >= prime) throw ConfigError("prime must exceed order! (order " + std::to_string(cutoff) + ")");
  }
}

}  // namespace dt4

#endif  // DT4_ENGINE_COMPARE_HPP

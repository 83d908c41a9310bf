#ifndef DT4_SERIES_MACMAHON_HPP
#define DT4_SERIES_MACMAHON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "dt4/errors.hpp"
#include "dt4/series/truncated_series.hpp"

namespace dt4 {

inline std::vector<std::string> single_variable(const std::string& name = "q") { return {name}; }

inline std::vector<std::string> color_variables(int r) {
  std::vector<std::string> v;
  for (int i = 0; i < r; ++i) v.push_back("q" + std::to_string(i));
  return v;
}

/// log M(sign * q) = sum_{n,k >= 1} (n/k) (sign q)^{nk}, sign = +1 or -1.
template <CoefficientField F>
TruncatedSeries<F> log_macmahon(const F& field, int cutoff, int sign, const std::string& var = "q") {
  TruncatedSeries<F> s(field, single_variable(var), cutoff);
  for (int n = 1; n <= cutoff; ++n) {
    for (int k = 1; n * k <= cutoff; ++k) {
      int parity = (sign < 0 && (n * k) % 2 == 1) ? -1 : 1;
      s.add_term({n * k}, field.from_rational(mpq_class(parity * n, k)));
    }
  }
  return s;
}

/// M(q) = prod_{n >= 1} (1 - q^n)^{-n}.
template <CoefficientField F>
TruncatedSeries<F> macmahon(const F& field, int cutoff, const std::string& var = "q") {
  return log_macmahon(field, cutoff, +1, var).exp();
}

/// M(-q).
template <CoefficientField F>
TruncatedSeries<F> macmahon_neg(const F& field, int cutoff, const std::string& var = "q") {
  return log_macmahon(field, cutoff, -1, var).exp();
}

/// log M(a, b) for a = q^{a_exponents} and b = -Q, Q = q_0 ... q_{r-1}:
/// sum_{n,k >= 1} (n/k) (a b^n)^k. Every a b^n must be a nonconstant monomial
/// with nonnegative exponents.
template <CoefficientField F>
TruncatedSeries<F> log_refined_macmahon(const F& field, const Exponent& a_exponents, int cutoff) {
  const int r = static_cast<int>(a_exponents.size());
  TruncatedSeries<F> s(field, color_variables(r), cutoff);
  for (int n = 1;; ++n) {
    Exponent base(a_exponents.size());
    for (int t = 0; t < r; ++t) {
      base[t] = a_exponents[t] + n;
      if (base[t] < 0) {
        throw NegativeExponentError("a*b^" + std::to_string(n) + " has a negative exponent");
      }
    }
    const int d = total_degree(base);
    if (d == 0) throw NegativeExponentError("a*b^" + std::to_string(n) + " is constant; log M(a,b) undefined");
    if (d > cutoff) {
      // Degrees grow with n (by r per step), so nothing further fits.
      break;
    }
    for (int k = 1; k * d <= cutoff; ++k) {
      Exponent e(base.size());
      for (int t = 0; t < r; ++t) e[t] = k * base[t];
      int parity = (n * k) % 2 == 0 ? 1 : -1;  // from b^{nk} = (-Q)^{nk}
      s.add_term(e, field.from_rational(mpq_class(parity * n, k)));
    }
  }
  return s;
}

enum class RefinedKind { plain, inverse };

/// Exponent vector of q_{[i,j]} = q_i ... q_j in r variables.
inline Exponent interval_exponent(int i, int j, int r) {
  Exponent e(static_cast<std::size_t>(r), 0);
  for (int t = i; t <= j; ++t) e[static_cast<std::size_t>(t)] = 1;
  return e;
}

inline void check_interval(int i, int j, int r) {
  if (!(0 < i && i <= j && j < r)) {
    throw std::invalid_argument("refined MacMahon needs 0 < i <= j < r");
  }
}

/// log M(q_{[i,j]}^{+-1}, -Q).
template <CoefficientField F>
TruncatedSeries<F> log_mac_refined(const F& field, RefinedKind kind, int i, int j, int r, int cutoff) {
  check_interval(i, j, r);
  Exponent a = interval_exponent(i, j, r);
  if (kind == RefinedKind::inverse) {
    for (auto& x : a) x = -x;
  }
  return log_refined_macmahon(field, a, cutoff);
}

template <CoefficientField F>
TruncatedSeries<F> mac_refined(const F& field, RefinedKind kind, int i, int j, int r, int cutoff) {
  return log_mac_refined(field, kind, i, j, r, cutoff).exp();
}

/// log of tilde M(q_{[i,j]}, -Q) = M(a, -Q) M(a^{-1}, -Q).
template <CoefficientField F>
TruncatedSeries<F> log_tilde_m(const F& field, int i, int j, int r, int cutoff) {
  return log_mac_refined(field, RefinedKind::plain, i, j, r, cutoff) +
         log_mac_refined(field, RefinedKind::inverse, i, j, r, cutoff);
}

template <CoefficientField F>
TruncatedSeries<F> tilde_m(const F& field, int i, int j, int r, int cutoff) {
  return log_tilde_m(field, i, j, r, cutoff).exp();
}

/// log M(1, -Q) in r variables.
template <CoefficientField F>
TruncatedSeries<F> log_mac_unit(const F& field, int r, int cutoff) {
  return log_refined_macmahon(field, Exponent(static_cast<std::size_t>(r), 0), cutoff);
}

}  // namespace dt4

#endif  // DT4_SERIES_MACMAHON_HPP

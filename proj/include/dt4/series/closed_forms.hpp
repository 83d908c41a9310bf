#ifndef DT4_SERIES_CLOSED_FORMS_HPP
#define DT4_SERIES_CLOSED_FORMS_HPP

#include "dt4/algebra/factored_rational.hpp"
#include "dt4/series/macmahon.hpp"
#include "dt4/series/truncated_series.hpp"
#include "dt4/vertex/geometry.hpp"

namespace dt4 {

/// e3(w)/e4(w) = sum_i 1/w_i for the four weights of a chart.
inline FactoredRational e3_over_e4(const Chart& chart) {
  FactoredRational total;
  for (const auto& w : chart.weights()) total += FactoredRational(1).divided_by(w);
  return total;
}

/// MacMahon exponent of a toric geometry: sum over charts of (m - lweight) e3/e4.
/// The sign of this localization sum fixes the orientation convention.
inline FactoredRational exponent_toric(const ToricGeometry& geom) {
  FactoredRational total;
  for (const auto& chart : geom.charts) {
    total += FactoredRational(Poly(LinearForm::m() - chart.lweight())) * e3_over_e4(chart);
  }
  return total;
}

/// -(m/s4) (r(s1+s2)/s3 + (s1+s2)(s1+s2+s3)/(r s1 s2)), the closed form for A_{r-1} x C^2.
inline FactoredRational exponent_a_series(int r) {
  const LinearForm s12 = LinearForm::s1() + LinearForm::s2();
  const LinearForm s123 = s12 + LinearForm::s3();
  FactoredRational first = FactoredRational(Poly(s12) * mpq_class(r)).divided_by(LinearForm::s3());
  FactoredRational second = FactoredRational(Poly(s12) * Poly(s123) * mpq_class(1, r))
                                .divided_by(LinearForm::s1())
                                .divided_by(LinearForm::s2());
  return (FactoredRational(-Poly(LinearForm::m())) * (first + second)).divided_by(LinearForm::s4());
}

/// -m(s1+s2)/(s3 s4), the exponent of every tilde M factor.
inline FactoredRational exponent_tilde() {
  const LinearForm s12 = LinearForm::s1() + LinearForm::s2();
  return FactoredRational(-(Poly(LinearForm::m()) * Poly(s12))).divided_by(LinearForm::s3()).divided_by(LinearForm::s4());
}

/// The two exponents with m = s4 substituted (the [C^3/Z_r] formula).
inline FactoredRational exponent_a_series_3d(int r) { return exponent_a_series(r).substitute_m(LinearForm::s4()); }
inline FactoredRational exponent_tilde_3d() { return exponent_tilde().substitute_m(LinearForm::s4()); }

/// M(-q)^E for the toric exponent E.
template <CoefficientField F>
TruncatedSeries<F> rhs_toric(const F& field, const ToricGeometry& geom, int cutoff) {
  return log_macmahon(field, cutoff, -1).scaled(field.lift(exponent_toric(geom))).exp();
}

namespace detail {

template <CoefficientField F>
TruncatedSeries<F> orbifold_closed_form(const F& field, int r, int cutoff, const FactoredRational& main_exponent,
                                        const FactoredRational& tilde_exponent) {
  if (r < 1) throw std::invalid_argument("orbifold closed form needs r >= 1");
  TruncatedSeries<F> log_total = log_mac_unit(field, r, cutoff).scaled(field.lift(main_exponent));
  if (r > 1) {
    TruncatedSeries<F> tilde_logs(field, color_variables(r), cutoff);
    for (int i = 1; i < r; ++i) {
      for (int j = i; j < r; ++j) tilde_logs += log_tilde_m(field, i, j, r, cutoff);
    }
    log_total += tilde_logs.scaled(field.lift(tilde_exponent));
  }
  return log_total.exp();
}

}  // namespace detail

/// M(1,-Q)^{E_main} prod_{0<i<=j<r} tilde M(q_{[i,j]}, -Q)^{E_tilde}.
template <CoefficientField F>
TruncatedSeries<F> rhs_orbifold(const F& field, int r, int cutoff) {
  return detail::orbifold_closed_form(field, r, cutoff, exponent_a_series(r), exponent_tilde());
}

/// The same product at m = s4.
template <CoefficientField F>
TruncatedSeries<F> rhs_orbifold_3d(const F& field, int r, int cutoff) {
  return detail::orbifold_closed_form(field, r, cutoff, exponent_a_series_3d(r), exponent_tilde_3d());
}

}  // namespace dt4

#endif  // DT4_SERIES_CLOSED_FORMS_HPP

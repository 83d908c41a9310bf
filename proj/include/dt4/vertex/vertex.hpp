#ifndef DT4_VERTEX_VERTEX_HPP
#define DT4_VERTEX_VERTEX_HPP

#include <stdexcept>
#include <string>

#include "dt4/algebra/equivariant_class.hpp"
#include "dt4/algebra/euler.hpp"
#include "dt4/algebra/factored_rational.hpp"
#include "dt4/errors.hpp"
#include "dt4/partitions/solid_partition.hpp"
#include "dt4/partitions/statistics.hpp"
#include "dt4/vertex/chart.hpp"

namespace dt4 {

/// prod over the listed axes (1-based) of (1 - t_i).
inline EquivariantClass p_class(std::initializer_list<int> axes) {
  EquivariantClass r(1);
  for (int i : axes) r *= EquivariantClass(1) - EquivariantClass(Monomial::t(i));
  return r;
}

/// P_{jkl} for {j,k,l} the complement of `axis`.
inline EquivariantClass p_complement(int axis) {
  if (axis < 1 || axis > 4) throw std::invalid_argument("axis must be in 1..4");
  EquivariantClass r(1);
  for (int i = 1; i <= 4; ++i) {
    if (i != axis) r *= EquivariantClass(1) - EquivariantClass(Monomial::t(i));
  }
  return r;
}

/// Square root of the virtual tangent space: Z - conj(P_{jkl}) Z conj(Z).
/// The default axis 4 uses P_123.
inline EquivariantClass v_dt(const SolidPartition& p, int axis = 4) {
  EquivariantClass z = character(p);
  return z - p_complement(axis).dual_t() * z * z.dual_t();
}

/// Full virtual tangent space Z + conj(Z) - P_1234 Z conj(Z).
inline EquivariantClass big_v(const SolidPartition& p) {
  EquivariantClass z = character(p);
  EquivariantClass zbar = z.dual_t();
  return z + zbar - p_class({1, 2, 3, 4}) * z * zbar;
}

/// y * conj(L Z): the tautological insertion term at a chart.
inline EquivariantClass insertion_term(const SolidPartition& p, const Chart& chart) {
  Monomial l;
  l.a = chart.l_character();
  return (EquivariantClass(l) * character(p)).dual_t() * EquivariantClass(Monomial::y());
}

inline void require_no_fixed_terms(const EquivariantClass& v, const Chart& chart) {
  int net = zero_weight_multiplicity(v, chart);
  if (net != 0) {
    throw FixedTermError("vertex has net multiplicity " + std::to_string(net) + " on fixed terms");
  }
}

/// Vertex with insertion v - y conj(L Z) at `chart`.
inline EquivariantClass v_tilde(const SolidPartition& p, const Chart& chart, int axis = 4) {
  EquivariantClass v = v_dt(p, axis) - insertion_term(p, chart);
  require_no_fixed_terms(v, chart);
  return v;
}

/// Keeps monomials with a1 - a2 = 0 mod r.
inline EquivariantClass zr_fix(const EquivariantClass& f, int r) {
  if (r < 1) throw std::invalid_argument("zr_fix: r must be positive");
  EquivariantClass out;
  for (const auto& [m, c] : f.terms()) {
    if ((m.a[0] - m.a[1]) % r == 0) out.add_term(m, c);
  }
  return out;
}

/// Orbifold square root built from the colored characters:
/// Z^(0) - (1 - t3^-1)[(1 + t1^-1 t2^-1) S_0 - t1^-1 S_1 - t2^-1 S_{-1}],
/// with S_d = sum over l - k = d mod r of Z^(l) conj(Z^(k)).
inline EquivariantClass v_dt_zr(const SolidPartition& p, int r) {
  if (r < 1) throw std::invalid_argument("v_dt_zr: r must be positive");
  std::vector<EquivariantClass> z;
  std::vector<EquivariantClass> zbar;
  for (int l = 0; l < r; ++l) {
    z.push_back(colored_character(p, r, l));
    zbar.push_back(z.back().dual_t());
  }
  auto shifted_sum = [&](int d) {
    EquivariantClass s;
    for (int l = 0; l < r; ++l) {
      for (int k = 0; k < r; ++k) {
        if (((l - k - d) % r + r) % r == 0) s += z[l] * zbar[k];
      }
    }
    return s;
  };
  const EquivariantClass t1inv(Monomial::t(1, -1));
  const EquivariantClass t2inv(Monomial::t(2, -1));
  const EquivariantClass t3inv(Monomial::t(3, -1));
  const EquivariantClass t12inv(Monomial::t(1, -1) * Monomial::t(2, -1));
  EquivariantClass bracket = (EquivariantClass(1) + t12inv) * shifted_sum(0) - t1inv * shifted_sum(1) -
                             t2inv * shifted_sum(-1);
  return z[0] - (EquivariantClass(1) - t3inv) * bracket;
}

inline EquivariantClass v_tilde_zr(const SolidPartition& p, int r) {
  EquivariantClass v =
      v_dt_zr(p, r) - colored_character(p, r, 0).dual_t() * EquivariantClass(Monomial::y());
  require_no_fixed_terms(v, Chart::standard());
  return v;
}

inline int parity_sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

/// (-1)^{mu^axis} e(-v_tilde^axis) at a chart.
inline FactoredRational contribution(const SolidPartition& p, const Chart& chart, int axis = 4) {
  FactoredRational e = euler_class(-v_tilde(p, chart, axis), chart);
  return parity_sign(mu_axis(p, axis)) == 1 ? e : -e;
}

/// (-1)^{mu} e(-v_tilde^{Z_r}) on the standard chart.
inline FactoredRational contribution_orbifold(const SolidPartition& p, int r) {
  FactoredRational e = euler_class(-v_tilde_zr(p, r), Chart::standard());
  return parity_sign(mu(p)) == 1 ? e : -e;
}

}  // namespace dt4

#endif  // DT4_VERTEX_VERTEX_HPP

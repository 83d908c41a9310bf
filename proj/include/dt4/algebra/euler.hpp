#ifndef DT4_ALGEBRA_EULER_HPP
#define DT4_ALGEBRA_EULER_HPP

#include "dt4/algebra/equivariant_class.hpp"
#include "dt4/algebra/factored_rational.hpp"
#include "dt4/algebra/linear_form.hpp"
#include "dt4/errors.hpp"
#include "dt4/vertex/chart.hpp"

namespace dt4 {

/// sum_i a_i w_i(chart) + b m.
inline LinearForm weight_map(const Monomial& mono, const Chart& chart) {
  LinearForm r = LinearForm::m() * mono.b;
  for (int i = 0; i < 4; ++i) {
    if (mono.a[i] != 0) r += chart.weight(i) * mono.a[i];
  }
  return r;
}

/// Net multiplicity of every weight of f; the zero form is kept as a key.
inline FormMultiset weight_multiplicities(const EquivariantClass& f, const Chart& chart) {
  FormMultiset net;
  for (const auto& [mono, c] : f.terms()) {
    int& slot = net[weight_map(mono, chart)];
    slot += static_cast<int>(c);
  }
  return net;
}

/// Net multiplicity sitting on the zero weight.
inline int zero_weight_multiplicity(const EquivariantClass& f, const Chart& chart) {
  auto net = weight_multiplicities(f, chart);
  auto it = net.find(LinearForm{});
  return it == net.end() ? 0 : it->second;
}

/// Equivariant Euler class prod_l l^{net multiplicity} of a virtual representation.
inline FactoredRational euler_class(const EquivariantClass& f, const Chart& chart) {
  auto net = weight_multiplicities(f, chart);
  auto zero = net.find(LinearForm{});
  if (zero != net.end()) {
    if (zero->second != 0) {
      throw ZeroFormError("class has net multiplicity " + std::to_string(zero->second) + " on the zero weight");
    }
    net.erase(zero);
  }
  return FactoredRational::from_factors(1, net);
}

}  // namespace dt4

#endif  // DT4_ALGEBRA_EULER_HPP

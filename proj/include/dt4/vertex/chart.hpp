#ifndef DT4_VERTEX_CHART_HPP
#define DT4_VERTEX_CHART_HPP

#include <array>
#include <string>
#include <utility>

#include "dt4/algebra/linear_form.hpp"
#include "dt4/errors.hpp"

namespace dt4 {

/// Torus-fixed point of a toric CY fourfold: four tangent weights and the
/// character of the line bundle L there (all zero for L = O).
class Chart {
 public:
  Chart() : Chart(standard_weights()) {}

  explicit Chart(std::array<LinearForm, 4> weights, std::array<int, 4> l_character = {0, 0, 0, 0})
      : w_(std::move(weights)), l_character_(l_character) {
    LinearForm total;
    for (const auto& w : w_) total += w;
    if (!total.is_zero()) throw ConfigError("chart weights do not sum to zero: " + total.to_string());
    for (const auto& w : w_) {
      if (sgn(w.coeff(Var::m)) != 0) throw ConfigError("chart weight involves m: " + w.to_string());
    }
  }

  static std::array<LinearForm, 4> standard_weights() {
    return {LinearForm::s1(), LinearForm::s2(), LinearForm::s3(), LinearForm::s4()};
  }
  static Chart standard(std::array<int, 4> l_character = {0, 0, 0, 0}) {
    return Chart(standard_weights(), l_character);
  }

  const std::array<LinearForm, 4>& weights() const { return w_; }
  const LinearForm& weight(int i) const { return w_[i]; }
  const std::array<int, 4>& l_character() const { return l_character_; }

  /// Equivariant weight of L at this point.
  LinearForm lweight() const {
    LinearForm r;
    for (int i = 0; i < 4; ++i) r += w_[i] * l_character_[i];
    return r;
  }

  /// Canonical text used in cache keys.
  std::string describe() const {
    std::string s = "w=[";
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + w_[i].to_string();
    s += "];L=[";
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + std::to_string(l_character_[i]);
    return s + "]";
  }

  bool operator==(const Chart& o) const { return w_ == o.w_ && l_character_ == o.l_character_; }

 private:
  std::array<LinearForm, 4> w_;
  std::array<int, 4> l_character_{};
};

}  // namespace dt4

#endif  // DT4_VERTEX_CHART_HPP

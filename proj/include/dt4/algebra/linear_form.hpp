#ifndef DT4_ALGEBRA_LINEAR_FORM_HPP
#define DT4_ALGEBRA_LINEAR_FORM_HPP

#include <array>
#include <cstdint>

#include <gmpxx.h>
#include <ostream>
#include <string>
#include <utility>

#include "dt4/algebra/modular.hpp"

namespace dt4 {

/// Variable order shared by LinearForm, Poly and PrimeSample.
enum class Var : int { s1 = 0, s2 = 1, s3 = 2, m = 3 };

inline constexpr std::array<const char*, 4> kVarNames = {"s1", "s2", "s3", "m"};

/// Exact linear form c1 s1 + c2 s2 + c3 s3 + cm m; s4 is always stored eliminated.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(mpq_class c1, mpq_class c2, mpq_class c3, mpq_class cm)
      : c_{std::move(c1), std::move(c2), std::move(c3), std::move(cm)} {}

  static LinearForm var(Var v) {
    LinearForm f;
    f.c_[static_cast<int>(v)] = 1;
    return f;
  }
  static LinearForm s1() { return var(Var::s1); }
  static LinearForm s2() { return var(Var::s2); }
  static LinearForm s3() { return var(Var::s3); }
  static LinearForm s4() { return LinearForm(-1, -1, -1, 0); }
  static LinearForm m() { return var(Var::m); }

  const mpq_class& operator[](int i) const { return c_[i]; }
  const mpq_class& coeff(Var v) const { return c_[static_cast<int>(v)]; }
  const std::array<mpq_class, 4>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_) {
      if (sgn(c) != 0) return false;
    }
    return true;
  }

  /// First variable with a nonzero coefficient, or -1 for the zero form.
  int leading_index() const {
    for (int i = 0; i < 4; ++i) {
      if (sgn(c_[i]) != 0) return i;
    }
    return -1;
  }

  LinearForm operator+(const LinearForm& o) const {
    LinearForm r;
    for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  LinearForm operator-(const LinearForm& o) const {
    LinearForm r;
    for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  LinearForm operator-() const {
    LinearForm r;
    for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
    return r;
  }
  LinearForm operator*(const mpq_class& k) const {
    LinearForm r;
    for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] * k;
    return r;
  }
  LinearForm& operator+=(const LinearForm& o) { return *this = *this + o; }

  bool operator==(const LinearForm& o) const { return c_ == o.c_; }
  bool operator<(const LinearForm& o) const {
    for (int i = 0; i < 4; ++i) {
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
  }

  /// Splits the form as scale * primitive, where the primitive form has coprime
  /// integer coefficients and a positive leading coefficient. Zero form: (1, 0).
  std::pair<mpq_class, LinearForm> primitive() const {
    int lead = leading_index();
    if (lead < 0) return {mpq_class(1), *this};
    mpz_class den_lcm = 1;
    for (const auto& c : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::array<mpz_class, 4> ints;
    mpz_class g = 0;
    for (int i = 0; i < 4; ++i) {
      ints[i] = c_[i].get_num() * (den_lcm / c_[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (sgn(c_[lead]) < 0) g = -g;
    LinearForm prim;
    for (int i = 0; i < 4; ++i) prim.c_[i] = mpq_class(ints[i] / g);
    mpq_class scale(g, den_lcm);
    scale.canonicalize();
    return {scale, prim};
  }

  /// Value at a sample point modulo its prime.
  std::uint64_t evaluate(const PrimeSample& at) const {
    std::uint64_t acc = 0;
    for (int i = 0; i < 4; ++i) {
      if (sgn(c_[i]) == 0) continue;
      acc = mod::add(acc, mod::mul(mod::from_mpq(c_[i], at.prime), at.point[i] % at.prime, at.prime),
                     at.prime);
    }
    return acc;
  }

  /// Replaces m by the form `value` (which must not involve m).
  LinearForm substitute_m(const LinearForm& value) const {
    LinearForm r = *this;
    r.c_[3] = 0;
    return r + value * c_[3];
  }

  /// Renders like "s1+s2", "-s1-s2-s3", "m-2*s1", "0".
  std::string to_string() const {
    std::string out;
    for (int i = 0; i < 4; ++i) {
      const mpq_class& c = c_[i];
      if (sgn(c) == 0) continue;
      mpq_class a = abs(c);
      if (sgn(c) < 0) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      if (a != 1) out += a.get_str() + "*";
      out += kVarNames[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::array<mpq_class, 4> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const LinearForm& x) { return os << x.to_string(); }

}  // namespace dt4

#endif  // DT4_ALGEBRA_LINEAR_FORM_HPP

#ifndef DT4_ALGEBRA_FACTORED_RATIONAL_HPP
#define DT4_ALGEBRA_FACTORED_RATIONAL_HPP

#include <algorithm>
#include <climits>

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dt4/algebra/linear_form.hpp"
#include "dt4/algebra/modular.hpp"
#include "dt4/algebra/poly.hpp"
#include "dt4/errors.hpp"

namespace dt4 {

/// Multiset of linear forms with signed multiplicities, keyed by exact form.
using FormMultiset = std::map<LinearForm, int>;

/// Rational function num / prod(form^mult) over linear forms.
///
/// Denominator forms are stored primitive (coprime integer coefficients,
/// positive leading coefficient); their scalar parts live in the numerator.
/// After every operation, no denominator form divides the numerator.
class FactoredRational {
 public:
  FactoredRational() = default;
  FactoredRational(const mpq_class& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  FactoredRational(long c) : num_(c) {}              // NOLINT(google-explicit-constructor)
  FactoredRational(Poly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  explicit FactoredRational(const LinearForm& f) : num_(f) {}

  /// num / prod(den) with arbitrary (nonprimitive) nonzero denominator forms.
  FactoredRational(Poly num, const FormMultiset& den) : num_(std::move(num)) {
    for (const auto& [form, mult] : den) {
      if (mult < 0) throw std::invalid_argument("negative denominator multiplicity");
      divide_by_form(form, mult);
    }
    reduce();
  }

  /// scalar * prod(form^mult) for signed multiplicities.
  static FactoredRational from_factors(const mpq_class& scalar, const FormMultiset& factors) {
    // Forms differing by a scalar share one primitive key, so distinct keys are
    // coprime and no cancellation is needed afterwards.
    mpq_class c = scalar;
    FormMultiset net;
    for (const auto& [form, mult] : factors) {
      if (mult == 0) continue;
      if (form.is_zero()) throw ZeroFormError("zero form in a factor product");
      auto [scale, prim] = form.primitive();
      net[prim] += mult;
      c *= mult > 0 ? power(scale, mult) : 1 / power(scale, -mult);
    }
    FactoredRational r(c);
    for (const auto& [prim, mult] : net) {
      if (mult > 0) {
        for (int k = 0; k < mult; ++k) r.num_ = r.num_.times(prim);
      } else if (mult < 0 && !r.num_.is_zero()) {
        r.den_[prim] = -mult;
      }
    }
    return r;
  }

  const Poly& numerator() const { return num_; }
  const FormMultiset& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  bool is_one() const { return den_.empty() && num_ == Poly(1); }

  int denominator_degree() const {
    int d = 0;
    for (const auto& [f, k] : den_) d += k;
    return d;
  }

  /// Degree of homogeneity (numerator degree minus denominator degree), if homogeneous.
  std::optional<int> homogeneous_degree() const {
    if (is_zero()) return 0;
    auto d = num_.homogeneous_degree();
    if (!d) return std::nullopt;
    return *d - denominator_degree();
  }

  FactoredRational operator-() const {
    FactoredRational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  FactoredRational operator+(const FactoredRational& o) const { return combine(o, false); }
  FactoredRational operator-(const FactoredRational& o) const { return combine(o, true); }
  FactoredRational& operator+=(const FactoredRational& o) { return *this = combine(o, false); }
  FactoredRational& operator-=(const FactoredRational& o) { return *this = combine(o, true); }

  FactoredRational operator*(const FactoredRational& o) const {
    if (is_zero() || o.is_zero()) return {};
    FactoredRational a = *this;
    FactoredRational b = o;
    a.cancel_against(b);
    b.cancel_against(a);
    FactoredRational r;
    r.num_ = a.num_ * b.num_;
    r.den_ = std::move(a.den_);
    for (const auto& [f, k] : b.den_) r.den_[f] += k;
    return r;
  }
  FactoredRational& operator*=(const FactoredRational& o) { return *this = *this * o; }

  FactoredRational operator*(const mpq_class& k) const {
    if (sgn(k) == 0) return {};
    FactoredRational r = *this;
    r.num_ = r.num_ * k;
    return r;
  }

  /// Division by a nonzero linear form.
  FactoredRational divided_by(const LinearForm& f, int mult = 1) const {
    FactoredRational r = *this;
    r.divide_by_form(f, mult);
    r.reduce();
    return r;
  }

  /// Inverse of a product of forms times a nonzero constant; general inversion is
  /// not available since numerators are not factored.
  FactoredRational inverse_of_constant() const {
    if (!num_.is_constant() || num_.is_zero()) throw std::domain_error("inverse of a non-monomial numerator");
    FactoredRational r(1 / num_.constant_term());
    for (const auto& [f, k] : den_) {
      for (int i = 0; i < k; ++i) r.num_ = r.num_.times(f);
    }
    return r;
  }

  bool operator==(const FactoredRational& o) const { return (*this - o).is_zero(); }
  bool operator!=(const FactoredRational& o) const { return !(*this == o); }

  /// Sum of many values over one common denominator, reduced once at the end.
  static FactoredRational sum(std::span<const FactoredRational> xs) {
    FormMultiset lcm;
    for (const auto& x : xs) {
      for (const auto& [f, k] : x.den_) {
        int& slot = lcm[f];
        slot = std::max(slot, k);
      }
    }
    Poly total;
    for (const auto& x : xs) {
      if (x.is_zero()) continue;
      Poly term = x.num_;
      for (const auto& [f, k] : lcm) {
        auto it = x.den_.find(f);
        int missing = k - (it == x.den_.end() ? 0 : it->second);
        for (int i = 0; i < missing; ++i) term = term.times(f);
      }
      total += term;
    }
    FactoredRational r;
    r.num_ = std::move(total);
    r.den_ = std::move(lcm);
    r.reduce();
    return r;
  }

  /// f-adic valuation for a nonzero form f; INT_MAX for the zero function.
  int valuation(const LinearForm& f) const {
    if (f.is_zero()) throw std::domain_error("valuation at the zero form");
    if (is_zero()) return INT_MAX;
    auto prim = f.primitive().second;
    int v = num_.valuation(prim);
    auto it = den_.find(prim);
    if (it != den_.end()) v -= it->second;
    return v;
  }

  /// Residue at a prime sample; DegeneratePointError when a denominator vanishes.
  std::uint64_t specialize(const PrimeSample& at) const {
    const std::uint64_t p = at.prime;
    std::uint64_t den = 1;
    for (const auto& [f, k] : den_) {
      std::uint64_t v = f.evaluate(at);
      if (v == 0) throw DegeneratePointError("denominator form " + f.to_string() + " vanishes at the sample point");
      den = mod::mul(den, mod::pow(v, static_cast<std::uint64_t>(k), p), p);
    }
    return mod::mul(num_.evaluate(at), mod::inv(den, p), p);
  }

  /// Replaces m by `value` (a form free of m).
  FactoredRational substitute_m(const LinearForm& value) const {
    FactoredRational r(num_.substitute_m(value));
    for (const auto& [f, k] : den_) {
      LinearForm g = f.substitute_m(value);
      if (g.is_zero()) throw ZeroFormError("substitution makes denominator form " + f.to_string() + " vanish");
      r.divide_by_form(g, k);
    }
    r.reduce();
    return r;
  }

  /// Human-readable form "num/(f1*f2^2)" with small linear factors pulled out of
  /// the numerator for readability, e.g. "m*(s1+s2)/(s3*(s1+s2+s3))".
  std::string to_string() const;

 private:
  Poly num_;
  FormMultiset den_;

  static mpq_class power(const mpq_class& x, int e) {
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }

  void divide_by_form(const LinearForm& f, int mult) {
    if (f.is_zero()) throw ZeroFormError("division by the zero form");
    if (mult == 0) return;
    auto [scale, prim] = f.primitive();
    den_[prim] += mult;
    num_ = num_ * (1 / power(scale, mult));
  }

  void reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      while (it->second > 0) {
        auto q = num_.divide(it->first);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  /// Cancels this numerator against the other operand's denominator.
  void cancel_against(FactoredRational& other) {
    for (auto it = other.den_.begin(); it != other.den_.end();) {
      while (it->second > 0) {
        auto q = num_.divide(it->first);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? other.den_.erase(it) : std::next(it);
    }
  }

  FactoredRational combine(const FactoredRational& o, bool negate) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return negate ? -o : o;
    if (den_ == o.den_) {
      FactoredRational r;
      r.num_ = negate ? num_ - o.num_ : num_ + o.num_;
      r.den_ = den_;
      r.reduce();
      return r;
    }
    const FactoredRational parts[2] = {*this, negate ? -o : o};
    return sum(parts);
  }
};

inline FactoredRational operator*(const mpq_class& k, const FactoredRational& x) { return x * k; }

namespace detail {

/// Fewer nonzero coefficients first, then s1 before s2 before s3 before m.
inline bool display_order(const LinearForm& x, const LinearForm& y) {
  auto weight = [](const LinearForm& f) {
    int n = 0;
    for (int i = 0; i < 4; ++i) n += sgn(f[i]) != 0 ? 1 : 0;
    return n;
  };
  if (weight(x) != weight(y)) return weight(x) < weight(y);
  return y < x;
}

/// Linear forms with coefficients in {-1, 0, 1}, primitive, tried when pulling
/// factors out of a numerator for display.
inline const std::vector<LinearForm>& display_factor_candidates() {
  static const std::vector<LinearForm> forms = [] {
    std::vector<LinearForm> out;
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        for (int c = -1; c <= 1; ++c) {
          for (int d = -1; d <= 1; ++d) {
            LinearForm f(a, b, c, d);
            if (f.is_zero() || f.primitive().second != f) continue;
            out.push_back(f);
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), display_order);
    return out;
  }();
  return forms;
}

/// Rational content with the sign of the leading term.
inline mpq_class content(const Poly& p) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  mpq_class c(num_gcd, den_lcm);
  c.canonicalize();
  if (!p.terms().empty() && sgn(p.terms().front().coeff) < 0) c = -c;
  return c;
}

inline std::string factor_to_string(const LinearForm& f, int k) {
  std::string s = f.to_string();
  if (f.leading_index() >= 0) {
    int nonzero = 0;
    for (int i = 0; i < 4; ++i) nonzero += sgn(f[i]) != 0 ? 1 : 0;
    bool bare = nonzero == 1 && f[f.leading_index()] == 1;
    if (!bare) s = "(" + s + ")";
  }
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

}  // namespace detail

inline std::string FactoredRational::to_string() const {
  if (is_zero()) return "0";
  Poly rest = num_;
  std::vector<std::pair<LinearForm, int>> factors;
  if (rest.degree() > 0) {
    for (const auto& f : detail::display_factor_candidates()) {
      int k = 0;
      while (rest.degree() > 0) {
        auto q = rest.divide(f);
        if (!q) break;
        rest = std::move(*q);
        ++k;
      }
      if (k > 0) factors.emplace_back(f, k);
    }
  }
  std::string num;
  if (!rest.is_constant()) {
    mpq_class content = detail::content(rest);
    rest = rest * (1 / content);
    if (content == -1) {
      num = "-";
    } else if (content != 1) {
      num = content.get_str() + "*";
    }
    num += factors.empty() ? rest.to_string() : "(" + rest.to_string() + ")*";
  } else {
    mpq_class c = rest.constant_term();
    if (factors.empty()) {
      num = c.get_str();
    } else if (c == -1) {
      num = "-";
    } else if (c != 1) {
      num = c.get_str() + "*";
    }
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) num += "*";
    num += detail::factor_to_string(factors[i].first, factors[i].second);
  }
  if (den_.empty()) return num;
  std::vector<std::pair<LinearForm, int>> den_sorted(den_.begin(), den_.end());
  std::sort(den_sorted.begin(), den_sorted.end(),
            [](const auto& x, const auto& y) { return detail::display_order(x.first, y.first); });
  std::string den;
  for (const auto& [f, k] : den_sorted) {
    if (!den.empty()) den += "*";
    den += detail::factor_to_string(f, k);
  }
  if (den_.size() > 1 || den_.begin()->second > 1) den = "(" + den + ")";
  return num + "/" + den;
}

inline std::ostream& operator<<(std::ostream& os, const FactoredRational& x) { return os << x.to_string(); }

}  // namespace dt4

#endif  // DT4_ALGEBRA_FACTORED_RATIONAL_HPP

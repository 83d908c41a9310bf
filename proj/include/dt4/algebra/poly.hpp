#ifndef DT4_ALGEBRA_POLY_HPP
#define DT4_ALGEBRA_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dt4/algebra/linear_form.hpp"
#include "dt4/algebra/modular.hpp"

namespace dt4 {

/// Sparse polynomial in (s1, s2, s3, m) with rational coefficients.
///
/// Terms are kept sorted by packed exponent key in decreasing order, which is
/// the lexicographic order s1 > s2 > s3 > m. Zero coefficients are never stored.
class Poly {
 public:
  using Key = std::uint64_t;
  using Exponents = std::array<unsigned, 4>;

  struct Term {
    Key key;
    mpq_class coeff;
  };

  static constexpr unsigned kBits = 16;
  static constexpr Key kMask = (Key{1} << kBits) - 1;

  static constexpr unsigned shift(int var) { return kBits * static_cast<unsigned>(3 - var); }
  static constexpr Key unit(int var) { return Key{1} << shift(var); }
  static unsigned exponent(Key k, int var) { return static_cast<unsigned>((k >> shift(var)) & kMask); }
  static Key pack(const Exponents& e) {
    Key k = 0;
    for (int v = 0; v < 4; ++v) {
      if (e[v] > kMask) throw std::overflow_error("Poly exponent exceeds 16 bits");
      k |= Key{e[v]} << shift(v);
    }
    return k;
  }
  static Exponents unpack(Key k) { return {exponent(k, 0), exponent(k, 1), exponent(k, 2), exponent(k, 3)}; }
  static unsigned total_degree(Key k) { return exponent(k, 0) + exponent(k, 1) + exponent(k, 2) + exponent(k, 3); }

  Poly() = default;
  Poly(const mpq_class& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) terms_.push_back({0, c});
  }
  Poly(long c) : Poly(mpq_class(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(const LinearForm& f) {
    for (int v = 0; v < 4; ++v) {
      if (sgn(f[v]) != 0) terms_.push_back({unit(v), f[v]});
    }
  }

  static Poly var(Var v) { return Poly(LinearForm::var(v)); }

  /// Builds from unordered terms, combining duplicates.
  static Poly from_terms(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }
  mpq_class constant_term() const {
    if (!terms_.empty() && terms_.back().key == 0) return terms_.back().coeff;
    return 0;
  }

  /// Total degree, -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(total_degree(t.key)));
    return d;
  }

  /// Common total degree of all terms; nullopt when mixed. Zero counts as homogeneous of any degree.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return 0;
    int d = static_cast<int>(total_degree(terms_.front().key));
    for (const auto& t : terms_) {
      if (static_cast<int>(total_degree(t.key)) != d) return std::nullopt;
    }
    return d;
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].key != o.terms_[i].key || terms_[i].coeff != o.terms_[i].coeff) return false;
    }
    return true;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly operator+(const Poly& o) const { return merge(o, false); }
  Poly operator-(const Poly& o) const { return merge(o, true); }
  Poly& operator+=(const Poly& o) { return *this = merge(o, false); }
  Poly& operator-=(const Poly& o) { return *this = merge(o, true); }

  Poly operator*(const mpq_class& k) const {
    if (sgn(k) == 0) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= k;
    return r;
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (o.terms_.size() == 1) return times_term(o.terms_[0]);
    if (terms_.size() == 1) return o.times_term(terms_[0]);
    std::unordered_map<Key, mpq_class> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    mpq_class prod;
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        mpq_mul(prod.get_mpq_t(), a.coeff.get_mpq_t(), b.coeff.get_mpq_t());
        acc[a.key + b.key] += prod;
      }
    }
    Poly r;
    r.terms_.reserve(acc.size());
    for (auto& [k, c] : acc) {
      if (sgn(c) != 0) r.terms_.push_back({k, std::move(c)});
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.key > y.key; });
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Multiplication by a linear form; cheaper than the general product.
  Poly times(const LinearForm& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size() * 4);
    for (int v = 0; v < 4; ++v) {
      if (sgn(f[v]) == 0) continue;
      for (const auto& t : terms_) out.push_back({t.key + unit(v), t.coeff * f[v]});
    }
    return from_terms(std::move(out));
  }

  Poly pow(unsigned e) const {
    Poly r(1);
    Poly base = *this;
    while (e != 0) {
      if (e & 1U) r *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return r;
  }

  /// Exact quotient by a nonzero linear form, or nullopt when it does not divide.
  ///
  /// Synthetic division in the leading variable v of the form: writing
  /// P = sum_k P_k v^k and f = c v + L, the quotient digits are
  /// Q_{k-1} = (P_k - L Q_k) / c, and divisibility means P_0 = L Q_0.
  std::optional<Poly> divide(const LinearForm& f) const {
    int v = f.leading_index();
    if (v < 0) throw std::domain_error("division by the zero form");
    if (is_zero()) return Poly{};
    if (!may_divide(f)) return std::nullopt;
    const mpq_class inv_c = 1 / f[v];
    LinearForm rest = f - LinearForm::var(static_cast<Var>(v)) * f[v];
    Poly rest_poly(rest);

    std::map<unsigned, std::vector<Term>, std::greater<>> digits;
    for (const auto& t : terms_) {
      unsigned e = exponent(t.key, v);
      digits[e].push_back({t.key - e * unit(v), t.coeff});
    }
    const unsigned top = digits.begin()->first;
    if (top == 0) return std::nullopt;
    auto digit = [&](unsigned k) {
      auto it = digits.find(k);
      return it == digits.end() ? Poly{} : from_terms(it->second);
    };
    std::vector<Term> quotient;
    Poly q = digit(top) * inv_c;  // Q_{top-1}
    for (unsigned k = top - 1;; --k) {
      for (const auto& t : q.terms_) quotient.push_back({t.key + k * unit(v), t.coeff});
      Poly next = digit(k) - rest_poly * q;
      if (k == 0) {
        if (!next.is_zero()) return std::nullopt;
        break;
      }
      q = next * inv_c;
    }
    return from_terms(std::move(quotient));
  }

  /// Multiplicity of the linear form as a factor (the zero polynomial reports -1).
  int valuation(const LinearForm& f) const {
    if (is_zero()) return -1;
    int n = 0;
    Poly cur = *this;
    while (auto q = cur.divide(f)) {
      cur = std::move(*q);
      ++n;
    }
    return n;
  }

  /// Replaces m by `value`, which must not involve m.
  Poly substitute_m(const LinearForm& value) const {
    if (sgn(value.coeff(Var::m)) != 0) throw std::invalid_argument("substitute_m: value involves m");
    std::map<unsigned, std::vector<Term>> by_power;
    for (const auto& t : terms_) {
      unsigned e = exponent(t.key, 3);
      by_power[e].push_back({t.key - e * unit(3), t.coeff});
    }
    Poly result;
    Poly power(1);
    unsigned current = 0;
    for (auto& [e, ts] : by_power) {
      while (current < e) {
        power = power.times(value);
        ++current;
      }
      result += from_terms(std::move(ts)) * power;
    }
    return result;
  }

  std::uint64_t evaluate(const PrimeSample& at) const {
    const std::uint64_t p = at.prime;
    std::uint64_t acc = 0;
    // Powers are cached per variable since exponents are small.
    std::array<std::vector<std::uint64_t>, 4> powers;
    for (const auto& t : terms_) {
      std::uint64_t val = mod::from_mpq(t.coeff, p);
      for (int v = 0; v < 4; ++v) {
        unsigned e = exponent(t.key, v);
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(1);
        while (pw.size() <= e) pw.push_back(mod::mul(pw.back(), at.point[v] % p, p));
        val = mod::mul(val, pw[e], p);
      }
      acc = mod::add(acc, val, p);
    }
    return acc;
  }

  /// Renders the expanded polynomial, e.g. "s1*m+s2*m" or "-2*s1^2+1/2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      mpq_class a = abs(t.coeff);
      std::string mono;
      for (int v = 0; v < 4; ++v) {
        unsigned e = exponent(t.key, v);
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kVarNames[v];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (sgn(t.coeff) < 0) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      if (mono.empty()) {
        out += a.get_str();
      } else {
        if (a != 1) out += a.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  std::vector<Term> terms_;

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.key > y.key; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().key == t.key) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
    terms_ = std::move(out);
  }

  Poly times_term(const Term& m) const {
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.key + m.key, t.coeff * m.coeff});
    return r;
  }

  Poly merge(const Poly& o, bool negate) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key > o.terms_[j].key)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].key > terms_[i].key) {
        r.terms_.push_back({o.terms_[j].key, negate ? mpq_class(-o.terms_[j].coeff) : o.terms_[j].coeff});
        ++j;
      } else {
        mpq_class c = negate ? mpq_class(terms_[i].coeff - o.terms_[j].coeff)
                             : mpq_class(terms_[i].coeff + o.terms_[j].coeff);
        if (sgn(c) != 0) r.terms_.push_back({terms_[i].key, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// Cheap necessary condition for divisibility: the polynomial must vanish at a
  /// point of the hyperplane f = 0 modulo a fixed prime.
  bool may_divide(const LinearForm& f) const {
    int v = f.leading_index();
    PrimeSample at;
    at.prime = kPrimeFamily[3];
    at.point = {0x9e3779b97f4a7c15ULL % at.prime, 0xbf58476d1ce4e5b9ULL % at.prime,
                0x94d049bb133111ebULL % at.prime, 0x2545f4914f6cdd1dULL % at.prime};
    try {
      at.point[v] = 0;
      std::uint64_t rest = f.evaluate(at);
      std::uint64_t c = mod::from_mpq(f[v], at.prime);
      at.point[v] = mod::mul(at.prime - rest % at.prime, mod::inv(c, at.prime), at.prime);
      return evaluate(at) == 0;
    } catch (const DegeneratePointError&) {
      return true;
    }
  }
};

inline Poly operator*(const mpq_class& k, const Poly& p) { return p * k; }

}  // namespace dt4

#endif  // DT4_ALGEBRA_POLY_HPP

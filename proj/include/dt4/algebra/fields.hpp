#ifndef DT4_ALGEBRA_FIELDS_HPP
#define DT4_ALGEBRA_FIELDS_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dt4/algebra/factored_rational.hpp"
#include "dt4/algebra/modular.hpp"

namespace dt4 {

/// Coefficient field of a truncated series. Values are plain data; the field
/// object carries whatever context (prime, sample point) the operations need.
template <class F>
concept CoefficientField = std::copyable<F> && requires(const F& f, const typename F::value_type& a,
                                                        const typename F::value_type& b, long n,
                                                        const mpq_class& q, const FactoredRational& x,
                                                        std::span<const typename F::value_type> xs) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, b) } -> std::same_as<typename F::value_type>;
  { f.sub(a, b) } -> std::same_as<typename F::value_type>;
  { f.mul(a, b) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, b) } -> std::same_as<bool>;
  { f.from_rational(q) } -> std::same_as<typename F::value_type>;
  { f.inverse_integer(n) } -> std::same_as<typename F::value_type>;
  { f.lift(x) } -> std::same_as<typename F::value_type>;
  { f.sum(xs) } -> std::same_as<typename F::value_type>;
  { f.format(a) } -> std::same_as<std::string>;
};

/// Exact rational functions in (s1, s2, s3, m).
struct ExactField {
  using value_type = FactoredRational;

  value_type zero() const { return {}; }
  value_type one() const { return FactoredRational(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  // Callers build q as mpq_class(n, k) without reducing; gmp needs canonical operands.
  value_type from_rational(const mpq_class& q) const {
    mpq_class c = q;
    c.canonicalize();
    return FactoredRational(c);
  }
  value_type inverse_integer(long n) const { return from_rational(mpq_class(1, n)); }
  value_type lift(const FactoredRational& x) const { return x; }
  value_type sum(std::span<const value_type> xs) const { return FactoredRational::sum(xs); }
  std::string format(const value_type& a) const { return a.to_string(); }
};

/// Residues modulo a prime at one sample point (s1, s2, s3, m).
struct PrimeField {
  using value_type = std::uint64_t;

  PrimeSample sample;

  std::uint64_t p() const { return sample.prime; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return mod::add(a, b, p()); }
  value_type sub(value_type a, value_type b) const { return mod::sub(a, b, p()); }
  value_type mul(value_type a, value_type b) const { return mod::mul(a, b, p()); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p() - a; }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  value_type from_rational(const mpq_class& q) const { return mod::from_mpq(q, p()); }
  value_type inverse_integer(long n) const { return mod::inv(mod::from_signed(n, p()), p()); }
  /// Throws DegeneratePointError when a denominator form vanishes at the sample.
  value_type lift(const FactoredRational& x) const { return x.specialize(sample); }
  value_type sum(std::span<const value_type> xs) const {
    value_type s = 0;
    for (auto x : xs) s = add(s, x);
    return s;
  }
  std::string format(value_type a) const { return std::to_string(a); }
};

static_assert(CoefficientField<ExactField>);
static_assert(CoefficientField<PrimeField>);

}  // namespace dt4

#endif  // DT4_ALGEBRA_FIELDS_HPP

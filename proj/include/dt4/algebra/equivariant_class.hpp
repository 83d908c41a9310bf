#ifndef DT4_ALGEBRA_EQUIVARIANT_CLASS_HPP
#define DT4_ALGEBRA_EQUIVARIANT_CLASS_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>

namespace dt4 {

/// Character t1^a1 t2^a2 t3^a3 t4^a4 y^b.
struct Monomial {
  std::array<int, 4> a{};
  int b = 0;

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.a[i] = a[i] + o.a[i];
    r.b = b + o.b;
    return r;
  }
  Monomial dual_t() const {
    Monomial r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  auto operator<=>(const Monomial&) const = default;

  static Monomial t(int i, int power = 1) {
    Monomial r;
    r.a[i - 1] = power;
    return r;
  }
  static Monomial y(int power = 1) {
    Monomial r;
    r.b = power;
    return r;
  }
};

/// Virtual representation of T x C*_m: a Laurent polynomial in t1..t4, y with
/// integer coefficients. Zero coefficients are never stored.
class EquivariantClass {
 public:
  using Terms = std::map<Monomial, std::int64_t>;

  EquivariantClass() = default;
  EquivariantClass(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[Monomial{}] = c;
  }
  EquivariantClass(const Monomial& mono, std::int64_t c = 1) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[mono] = c;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::int64_t coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const Monomial& mono, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  EquivariantClass& operator+=(const EquivariantClass& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  EquivariantClass& operator-=(const EquivariantClass& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  EquivariantClass operator+(const EquivariantClass& o) const { return EquivariantClass(*this) += o; }
  EquivariantClass operator-(const EquivariantClass& o) const { return EquivariantClass(*this) -= o; }
  EquivariantClass operator-() const {
    EquivariantClass r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  EquivariantClass operator*(const EquivariantClass& o) const {
    EquivariantClass r;
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }
  EquivariantClass& operator*=(const EquivariantClass& o) { return *this = *this * o; }

  bool operator==(const EquivariantClass& o) const { return terms_ == o.terms_; }

  /// Bar involution t_i -> t_i^{-1}; the y exponent is untouched.
  EquivariantClass dual_t() const {
    EquivariantClass r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.dual_t(), c);
    return r;
  }

  /// Sum of coefficients (virtual rank).
  std::int64_t rank() const {
    std::int64_t n = 0;
    for (const auto& [m, c] : terms_) n += c;
    return n;
  }

  /// Renders as "-y - t1^-1*t2^-1 + t3^-1", terms in decreasing monomial order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string mono;
      auto append = [&](const std::string& name, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += "*";
        mono += name;
        if (e != 1) mono += "^" + std::to_string(e);
      };
      for (int i = 0; i < 4; ++i) append("t" + std::to_string(i + 1), m.a[i]);
      append("y", m.b);
      std::int64_t mag = c < 0 ? -c : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (mono.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

inline EquivariantClass dual_t(const EquivariantClass& f) { return f.dual_t(); }

inline std::ostream& operator<<(std::ostream& os, const EquivariantClass& x) { return os << x.to_string(); }

}  // namespace dt4

#endif  // DT4_ALGEBRA_EQUIVARIANT_CLASS_HPP

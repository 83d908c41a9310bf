#ifndef DT4_SERIES_TRUNCATED_SERIES_HPP
#define DT4_SERIES_TRUNCATED_SERIES_HPP

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dt4/algebra/fields.hpp"
#include "dt4/errors.hpp"

namespace dt4 {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Power series in named variables, truncated at total degree `cutoff`.
template <CoefficientField F>
class TruncatedSeries {
 public:
  using value_type = typename F::value_type;
  using Terms = std::map<Exponent, value_type>;

  TruncatedSeries(F field, std::vector<std::string> vars, int cutoff)
      : field_(std::move(field)), vars_(std::move(vars)), cutoff_(cutoff) {
    if (cutoff_ < 0) throw std::invalid_argument("series cutoff must be nonnegative");
    if (vars_.empty()) throw std::invalid_argument("series needs at least one variable");
  }

  static TruncatedSeries constant(F field, std::vector<std::string> vars, int cutoff, const value_type& c) {
    TruncatedSeries s(std::move(field), std::move(vars), cutoff);
    s.add_term(Exponent(s.nvars(), 0), c);
    return s;
  }
  static TruncatedSeries one(F field, std::vector<std::string> vars, int cutoff) {
    value_type c = field.one();
    return constant(std::move(field), std::move(vars), cutoff, c);
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  int cutoff() const { return cutoff_; }
  const Terms& terms() const { return terms_; }

  value_type coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }
  value_type constant_term() const { return coefficient(Exponent(nvars(), 0)); }

  /// Adds c q^e; terms above the cutoff are dropped.
  void add_term(const Exponent& e, const value_type& c) {
    if (e.size() != nvars()) throw std::invalid_argument("exponent length does not match variable count");
    for (int x : e) {
      if (x < 0) throw NegativeExponentError("negative exponent in a power series term");
    }
    if (total_degree(e) > cutoff_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!field_.is_zero(c)) terms_.emplace(e, c);
      return;
    }
    it->second = field_.add(it->second, c);
    if (field_.is_zero(it->second)) terms_.erase(it);
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    check_compatible(o);
    TruncatedSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  TruncatedSeries operator-(const TruncatedSeries& o) const {
    check_compatible(o);
    TruncatedSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, field_.neg(c));
    return r;
  }
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    check_compatible(o);
    std::map<Exponent, std::vector<value_type>> parts;
    for (const auto& [ea, ca] : terms_) {
      int da = total_degree(ea);
      for (const auto& [eb, cb] : o.terms_) {
        if (da + total_degree(eb) > cutoff_) continue;
        parts[add_exponents(ea, eb)].push_back(field_.mul(ca, cb));
      }
    }
    return collect(std::move(parts));
  }
  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  TruncatedSeries scaled(const value_type& k) const {
    TruncatedSeries r(field_, vars_, cutoff_);
    for (const auto& [e, c] : terms_) r.add_term(e, field_.mul(k, c));
    return r;
  }

  /// Applies `fn` to every coefficient (e.g. a substitution), dropping zeros.
  template <class Fn>
  TruncatedSeries map_coefficients(Fn&& fn) const {
    TruncatedSeries r(field_, vars_, cutoff_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// Same coefficients with a smaller cutoff.
  TruncatedSeries truncated(int cutoff) const {
    TruncatedSeries r(field_, vars_, std::min(cutoff, cutoff_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  /// Formal logarithm; requires constant term 1.
  ///
  /// With D the total-degree operator, D(log f) f = D f gives, gradewise,
  /// n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}.
  TruncatedSeries log() const {
    if (!field_.equal(constant_term(), field_.one())) {
      throw NonUnitConstantTerm("log needs constant term 1");
    }
    auto f = graded();
    std::vector<Grade> g(static_cast<std::size_t>(cutoff_) + 1);
    for (int n = 1; n <= cutoff_; ++n) {
      std::map<Exponent, std::vector<value_type>> parts;
      for (int k = 1; k < n; ++k) {
        value_type weight = field_.from_rational(mpq_class(-k, n));
        accumulate_product(parts, g[k], f[n - k], weight);
      }
      for (const auto& [e, c] : f[n]) parts[e].push_back(c);
      g[n] = sum_parts(std::move(parts));
    }
    return from_grades(g);
  }

  /// Formal exponential; requires constant term 0.
  ///
  /// D exp(g) = exp(g) D g gives n h_n = sum_{k=1}^{n} k g_k h_{n-k}.
  TruncatedSeries exp() const {
    if (!field_.is_zero(constant_term())) throw NonUnitConstantTerm("exp needs constant term 0");
    auto g = graded();
    std::vector<Grade> h(static_cast<std::size_t>(cutoff_) + 1);
    h[0].emplace_back(Exponent(nvars(), 0), field_.one());
    for (int n = 1; n <= cutoff_; ++n) {
      std::map<Exponent, std::vector<value_type>> parts;
      for (int k = 1; k <= n; ++k) {
        value_type weight = field_.from_rational(mpq_class(k, n));
        accumulate_product(parts, g[k], h[n - k], weight);
      }
      h[n] = sum_parts(std::move(parts));
    }
    return from_grades(h);
  }

  /// exp(E log s).
  TruncatedSeries pow_scalar(const value_type& exponent) const { return log().scaled(exponent).exp(); }

  /// [{"exponents": [...], "coeff": "..."}] in increasing exponent order.
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [e, c] : terms_) out.push_back({{"exponents", e}, {"coeff", field_.format(c)}});
    return out;
  }

 private:
  using Grade = std::vector<std::pair<Exponent, value_type>>;

  F field_;
  std::vector<std::string> vars_;
  int cutoff_;
  Terms terms_;

  void check_compatible(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || cutoff_ != o.cutoff_) {
      throw std::invalid_argument("series with different variables or cutoffs");
    }
  }

  static Exponent add_exponents(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }

  std::vector<Grade> graded() const {
    std::vector<Grade> out(static_cast<std::size_t>(cutoff_) + 1);
    for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(total_degree(e))].emplace_back(e, c);
    return out;
  }

  TruncatedSeries from_grades(const std::vector<Grade>& grades) const {
    TruncatedSeries r(field_, vars_, cutoff_);
    for (const auto& grade : grades) {
      for (const auto& [e, c] : grade) r.add_term(e, c);
    }
    return r;
  }

  void accumulate_product(std::map<Exponent, std::vector<value_type>>& parts, const Grade& a, const Grade& b,
                          const value_type& weight) const {
    if (a.empty() || b.empty()) return;
    for (const auto& [ea, ca] : a) {
      value_type wa = field_.mul(weight, ca);
      for (const auto& [eb, cb] : b) parts[add_exponents(ea, eb)].push_back(field_.mul(wa, cb));
    }
  }

  Grade sum_parts(std::map<Exponent, std::vector<value_type>> parts) const {
    Grade out;
    for (auto& [e, xs] : parts) {
      value_type s = xs.size() == 1 ? xs.front() : field_.sum(xs);
      if (!field_.is_zero(s)) out.emplace_back(e, std::move(s));
    }
    return out;
  }

  TruncatedSeries collect(std::map<Exponent, std::vector<value_type>> parts) const {
    TruncatedSeries r(field_, vars_, cutoff_);
    for (auto& [e, s] : sum_parts(std::move(parts))) r.terms_.emplace(e, std::move(s));
    return r;
  }
};

}  // namespace dt4

#endif  // DT4_SERIES_TRUNCATED_SERIES_HPP

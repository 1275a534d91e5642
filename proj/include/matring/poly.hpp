#ifndef MATRING_POLY_HPP
#define MATRING_POLY_HPP

// Commutative polynomials over a field: dense univariate UniPoly and sparse
// bivariate BiPoly in s, t. BiPoly terms are kept in lex order with t > s,
// which is also the monomial order the Groebner engine uses.

#include "matring/coeff_traits.hpp"
#include "matring/text_parse.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace matring {

/// Degree of the zero polynomial.
inline constexpr long kNegInfDegree = std::numeric_limits<long>::min();

namespace detail {

// Appends one term to a canonical polynomial string.
template <class K>
void append_term(std::string& out, const K& c, const std::string& mono) {
  bool neg = is_negative(c);
  K mag = neg ? K(-c) : c;
  std::string cs = coeff_str(mag);
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += cs;
  } else if (cs == "1") {
    out += mono;
  } else {
    out += cs + "*" + mono;
  }
}

inline std::string power_str(char var, std::uint64_t e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// UniPoly

template <class K>
class UniPoly {
 public:
  using coeff_type = K;

  UniPoly() = default;
  explicit UniPoly(std::vector<K> low_to_high, char var = 't') : c_(std::move(low_to_high)), var_(var) { trim(); }

  static UniPoly constant(const K& c, char var = 't') { return UniPoly(std::vector<K>{c}, var); }
  static UniPoly monomial(const K& c, std::size_t deg, char var = 't') {
    std::vector<K> v(deg + 1, zero_like(c));
    v[deg] = c;
    return UniPoly(std::move(v), var);
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return c_.empty() ? kNegInfDegree : static_cast<long>(c_.size()) - 1; }
  char variable() const { return var_; }
  UniPoly with_variable(char v) const {
    UniPoly r = *this;
    r.var_ = v;
    return r;
  }
  const std::vector<K>& coefficients() const { return c_; }
  const K& leading() const {
    if (c_.empty()) throw std::domain_error("UniPoly: leading coefficient of zero");
    return c_.back();
  }
  /// Coefficient of var^k; `zero` is returned beyond the degree.
  K coeff(std::size_t k, const K& zero) const { return k < c_.size() ? c_[k] : zero; }

  UniPoly monic() const {
    if (c_.empty()) return *this;
    K inv = one_like(c_.back()) / c_.back();
    UniPoly r = *this;
    for (K& x : r.c_) x = x * inv;
    return r;
  }

  /// Horner evaluation.
  K eval(const K& x) const {
    if (c_.empty()) return zero_like(x);
    K acc = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (K& x : r.c_) x = -x;
    return r;
  }
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() < b.c_.size()) return b + a;
    UniPoly r = a;
    r.var_ = a.c_.empty() ? b.var_ : a.var_;
    for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[k] = r.c_[k] + b.c_[k];
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UniPoly({}, a.var_);
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out), a.var_);
  }
  friend UniPoly operator*(const K& s, const UniPoly& a) {
    UniPoly r = a;
    for (K& x : r.c_) x = s * x;
    r.trim();
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  UniPoly pow(unsigned long e) const {
    if (c_.empty()) {
      if (e == 0) throw std::domain_error("UniPoly: 0^0");
      return *this;
    }
    UniPoly result = constant(one_like(c_[0]), var_);
    UniPoly base = *this;
    while (e > 0) {
      if (e & 1UL) result *= base;
      base *= base;
      e >>= 1UL;
    }
    return result;
  }

  /// Euclidean division over a field: a = q*b + r with deg r < deg b.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly: division by zero");
    UniPoly r = a;
    std::vector<K> q;
    const long db = b.degree();
    if (r.degree() >= db) q.assign(static_cast<std::size_t>(r.degree() - db + 1), zero_like(b.leading()));
    K inv = one_like(b.leading()) / b.leading();
    while (!r.is_zero() && r.degree() >= db) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - db);
      K f = r.leading() * inv;
      q[shift] = f;
      for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[k + shift] -= f * b.c_[k];
      r.trim();
    }
    return {UniPoly(std::move(q), a.var_), r};
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Canonical text, descending powers: "t^3 - t^2 - 2*t + 1".
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      detail::append_term(out, c_[k], detail::power_str(var_, k));
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
  char var_ = 't';
};

template <class K>
std::ostream& operator<<(std::ostream& os, const UniPoly<K>& p) {
  return os << p.str();
}

/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
template <class K>
UniPoly<K> uni_gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K>
bool divides(const UniPoly<K>& d, const UniPoly<K>& a) {
  if (d.is_zero()) return a.is_zero();
  return divmod(a, d).second.is_zero();
}

// ---------------------------------------------------------------------------
// BiPoly

/// Exponent pair s^s_exp * t^t_exp.
struct Monomial {
  std::uint32_t s = 0;
  std::uint32_t t = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  bool divides(const Monomial& o) const { return s <= o.s && t <= o.t; }
  Monomial operator*(const Monomial& o) const { return {s + o.s, t + o.t}; }
  /// Requires divides(o) to have been checked by the caller.
  Monomial quotient_of(const Monomial& o) const { return {o.s - s, o.t - t}; }
  static Monomial lcm(const Monomial& a, const Monomial& b) { return {std::max(a.s, b.s), std::max(a.t, b.t)}; }
  std::uint32_t total_degree() const { return s + t; }

  std::string str() const {
    std::string ss = detail::power_str('s', s);
    std::string ts = detail::power_str('t', t);
    if (ss.empty()) return ts;
    if (ts.empty()) return ss;
    return ss + "*" + ts;
  }
};

/// Lex with t > s.
struct LexTOverS {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.s > b.s;
  }
};
inline bool lex_less(const Monomial& a, const Monomial& b) { return LexTOverS{}(b, a); }

template <class K>
class BiPoly {
 public:
  using coeff_type = K;
  using term_map = std::map<Monomial, K, LexTOverS>;  // leading term first

  BiPoly() = default;

  static BiPoly constant(const K& c) { return monomial(c, {0, 0}); }
  static BiPoly monomial(const K& c, Monomial m) {
    BiPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }
  static BiPoly s_var(const K& one) { return monomial(one, {1, 0}); }
  static BiPoly t_var(const K& one) { return monomial(one, {0, 1}); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{}); }
  const term_map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("BiPoly: leading monomial of zero");
    return terms_.begin()->first;
  }
  const K& leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("BiPoly: leading coefficient of zero");
    return terms_.begin()->second;
  }
  long degree_t() const {
    long d = kNegInfDegree;
    for (const auto& [m, c] : terms_) d = std::max<long>(d, m.t);
    return d;
  }
  long degree_s() const {
    long d = kNegInfDegree;
    for (const auto& [m, c] : terms_) d = std::max<long>(d, m.s);
    return d;
  }

  /// The coefficient of t^k, as a polynomial in s alone.
  BiPoly t_coefficient(std::uint32_t k) const {
    BiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.t == k) r.terms_.emplace(Monomial{m.s, 0}, c);
    }
    return r;
  }

  BiPoly monic() const {
    if (terms_.empty()) return *this;
    K inv = one_like(leading_coeff()) / leading_coeff();
    return inv * *this;
  }

  void add_term(const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }
  friend BiPoly operator*(const K& s, const BiPoly& a) {
    if (s.is_zero()) return {};
    BiPoly r = a;
    for (auto& [m, c] : r.terms_) c = s * c;
    return r;
  }
  /// Multiplication by c * m.
  BiPoly times_term(const Monomial& m, const K& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  /// Negative exponents are rejected; 0^0 needs a one and is rejected too.
  BiPoly pow(long e) const {
    if (e < 0) throw std::domain_error("BiPoly: negative exponent");
    if (terms_.empty()) {
      if (e == 0) throw std::domain_error("BiPoly: 0^0");
      return *this;
    }
    BiPoly result = constant(one_like(terms_.begin()->second));
    BiPoly base = *this;
    while (e > 0) {
      if (e & 1L) result *= base;
      e >>= 1L;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  /// Canonical text: descending in t, then in s, e.g.
  /// "t^6 + 5*s*t^4 + 6*s^2*t^2 + s^3".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) detail::append_term(out, c, m.str());
    return out;
  }

 private:
  term_map terms_;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const BiPoly<K>& p) {
  return os << p.str();
}

/// Ring homomorphism K[s,t] -> K[t] fixing t and sending s to v.
template <class K>
UniPoly<K> evaluate_s(const BiPoly<K>& p, const K& v) {
  if (p.is_zero()) return UniPoly<K>({}, 't');
  std::vector<K> out(static_cast<std::size_t>(p.degree_t()) + 1, zero_like(v));
  for (const auto& [m, c] : p.terms()) {
    K w = c;
    for (std::uint32_t k = 0; k < m.s; ++k) w = w * v;
    out[m.t] += w;
  }
  return UniPoly<K>(std::move(out), 't');
}

/// Inverse direction of evaluate_s's codomain: embed a t-polynomial.
template <class K>
BiPoly<K> embed_t(const UniPoly<K>& u) {
  BiPoly<K> r;
  const auto& c = u.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) r.add_term({0, static_cast<std::uint32_t>(k)}, c[k]);
  return r;
}

// ---------------------------------------------------------------------------
// Text parsing

namespace detail {

template <class Field>
struct BiPolyBuilder {
  using value_type = BiPoly<typename Field::element_type>;
  const Field& field;
  value_type number(std::string_view s) const { return value_type::constant(field.parse(s)); }
  value_type variable(char v) const {
    if (v == 's') return value_type::s_var(field.one());
    if (v == 't') return value_type::t_var(field.one());
    throw ParseError(std::string("unknown variable '") + v + "' (expected s or t)");
  }
  value_type pow(const value_type& b, unsigned long e) const {
    if (e == 0) return value_type::constant(field.one());
    return b.pow(static_cast<long>(e));
  }
};

template <class Field>
struct UniPolyBuilder {
  using value_type = UniPoly<typename Field::element_type>;
  const Field& field;
  char var;
  value_type number(std::string_view s) const { return value_type::constant(field.parse(s), var); }
  value_type variable(char v) const {
    if (v != var) throw ParseError(std::string("unknown variable '") + v + "'");
    return value_type::monomial(field.one(), 1, var);
  }
  value_type pow(const value_type& b, unsigned long e) const {
    if (e == 0) return value_type::constant(field.one(), var);
    return b.pow(e);
  }
};

}  // namespace detail

template <class Field>
BiPoly<typename Field::element_type> parse_bipoly(std::string_view text, const Field& field) {
  detail::BiPolyBuilder<Field> b{field};
  return ExpressionParser<detail::BiPolyBuilder<Field>>(text, b).parse();
}

template <class Field>
UniPoly<typename Field::element_type> parse_unipoly(std::string_view text, const Field& field, char var = 't') {
  detail::UniPolyBuilder<Field> b{field, var};
  return ExpressionParser<detail::UniPolyBuilder<Field>>(text, b).parse().with_variable(var);
}

}  // namespace matring

#endif  // MATRING_POLY_HPP

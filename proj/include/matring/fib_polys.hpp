#ifndef MATRING_FIB_POLYS_HPP
#define MATRING_FIB_POLYS_HPP

// Three recursive polynomial families:
//   f(0) = 0, f(1) = 1, f(n) = t*f(n-1) + s*f(n-2)        in A[s,t]
//   fbar(n) = f(n) with s -> -1                             in A[t]
//   f_0 = 2, f_1 = x, f_{n+1} = x*f_n - f_{n-1}             in A[x]
// and the companion power [[t,s],[1,0]]^n in closed form.
//
// All three have integer coefficients, so they are memoised once over Q
// and mapped into the requested field on the way out.

#include "matring/mat2.hpp"
#include "matring/poly.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace matring {

namespace detail {

template <class Poly, class Next>
class Memo {
 public:
  Memo(std::vector<Poly> seeds, Next next) : table_(std::move(seeds)), next_(std::move(next)) {}

  Poly get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (table_.size() <= n) table_.push_back(next_(table_));
    return table_[n];
  }

 private:
  std::mutex mu_;
  std::vector<Poly> table_;
  Next next_;
};

inline BiPoly<Rational> f_st_integer(std::size_t n) {
  using P = BiPoly<Rational>;
  static Memo memo(std::vector<P>{P{}, P::constant(1)}, [](const std::vector<P>& prev) {
    const std::size_t k = prev.size();
    return prev[k - 1].times_term({0, 1}, Rational(1)) + prev[k - 2].times_term({1, 0}, Rational(1));
  });
  return memo.get(n);
}

inline UniPoly<Rational> trace_poly_integer(std::size_t n) {
  using P = UniPoly<Rational>;
  static Memo memo(std::vector<P>{P::constant(2, 'x'), P::monomial(1, 1, 'x')}, [](const std::vector<P>& prev) {
    const std::size_t k = prev.size();
    return P::monomial(1, 1, 'x') * prev[k - 1] - prev[k - 2];
  });
  return memo.get(n);
}

template <class Field>
BiPoly<typename Field::element_type> map_coefficients(const BiPoly<Rational>& p, const Field& field) {
  BiPoly<typename Field::element_type> out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, field.from_rational(c));
  return out;
}

template <class Field>
UniPoly<typename Field::element_type> map_coefficients(const UniPoly<Rational>& p, const Field& field) {
  std::vector<typename Field::element_type> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(field.from_rational(c));
  return UniPoly<typename Field::element_type>(std::move(out), p.variable());
}

}  // namespace detail

template <class Field = RationalField>
BiPoly<typename Field::element_type> f_st(std::size_t n, const Field& field = {}) {
  return detail::map_coefficients(detail::f_st_integer(n), field);
}

template <class Field = RationalField>
UniPoly<typename Field::element_type> fbar(std::size_t n, const Field& field = {}) {
  return evaluate_s(f_st(n, field), field.from_int(-1));
}

/// f_n(x) with f_0 = 2, f_1 = x.
template <class Field = RationalField>
UniPoly<typename Field::element_type> trace_poly(std::size_t n, const Field& field = {}) {
  return detail::map_coefficients(detail::trace_poly_integer(n), field);
}

/// [[t, s], [1, 0]] over K[s,t].
template <class Field = RationalField>
Mat2<BiPoly<typename Field::element_type>> companion_matrix(const Field& field = {}) {
  using P = BiPoly<typename Field::element_type>;
  return {P::t_var(field.one()), P::s_var(field.one()), P::constant(field.one()), P{}};
}

/// Closed form [[f(n+1), s f(n)], [f(n), s f(n-1)]]; n >= 1.
template <class Field = RationalField>
Mat2<BiPoly<typename Field::element_type>> companion_power(std::size_t n, const Field& field = {}) {
  if (n < 1) throw std::invalid_argument("companion_power: n must be positive");
  using P = BiPoly<typename Field::element_type>;
  const P s = P::s_var(field.one());
  return {f_st(n + 1, field), s * f_st(n, field), f_st(n, field), s * f_st(n - 1, field)};
}

}  // namespace matring

#endif  // MATRING_FIB_POLYS_HPP

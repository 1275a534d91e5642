#ifndef MATRING_GROEBNER_HPP
#define MATRING_GROEBNER_HPP

// Buchberger's algorithm for ideals of K[s,t] under lex t > s, normal forms,
// quotient-ring elements and standard monomial bases.

#include "matring/fib_polys.hpp"
#include "matring/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace matring {

template <class K>
struct Ideal {
  std::vector<BiPoly<K>> generators;
  std::string field_name;
  /// Set when the ideal comes from the structure theorem; stored with i >= j.
  std::optional<std::pair<long, long>> params;
};

/// Canonical order for a structure pair: (max, min).
inline std::pair<long, long> canonical_pair(long i, long j) { return i >= j ? std::pair{i, j} : std::pair{j, i}; }

/// (f(i+j), f(i+j-1) - s^(j-1), s^(i-j) - (-1)^(i-j)) with i >= j after
/// swapping; (t) for i = j = 1.
template <class Field = RationalField>
Ideal<typename Field::element_type> build_ideal_I(long i, long j, const Field& field = {}) {
  using K = typename Field::element_type;
  using P = BiPoly<K>;
  if (i < 1 || j < 1) throw UnsupportedParameters("build_ideal_I: exponents must be positive");
  if (std::gcd(i, j) != 1) {
    throw UnsupportedParameters("build_ideal_I: gcd(" + std::to_string(i) + ", " + std::to_string(j) +
                                ") != 1, no quotient description available");
  }
  auto [hi, lo] = canonical_pair(i, j);
  Ideal<K> ideal;
  ideal.field_name = field.name();
  ideal.params = std::pair{hi, lo};
  const K one = field.one();
  if (hi == 1 && lo == 1) {
    ideal.generators.push_back(P::t_var(one));
    return ideal;
  }
  const auto m = static_cast<std::size_t>(hi + lo);
  const auto diff = static_cast<std::uint32_t>(hi - lo);
  const K sign = diff % 2 == 0 ? one : field.from_int(-1);
  ideal.generators.push_back(f_st(m, field));
  ideal.generators.push_back(f_st(m - 1, field) - P::monomial(one, {static_cast<std::uint32_t>(lo - 1), 0}));
  ideal.generators.push_back(P::monomial(one, {diff, 0}) - P::constant(sign));
  return ideal;
}

/// Records each basis element as a combination of the input generators.
template <class K>
struct CofactorTranscript {
  std::vector<BiPoly<K>> generators;
  /// cofactors[k][g]: coefficient of generators[g] in basis element k.
  std::vector<std::vector<BiPoly<K>>> cofactors;
};

template <class K>
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  /// Takes an already reduced, monic, sorted basis.
  explicit GroebnerBasis(std::vector<BiPoly<K>> basis) : basis_(std::move(basis)) {
    leading_.reserve(basis_.size());
    for (const auto& g : basis_) leading_.push_back(g.leading_monomial());
  }

  const std::vector<BiPoly<K>>& basis() const { return basis_; }
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  std::size_t size() const { return basis_.size(); }

  /// Full multivariate division remainder.
  BiPoly<K> reduce(BiPoly<K> p) const {
    BiPoly<K> rem;
    while (!p.is_zero()) {
      const Monomial lm = p.leading_monomial();
      const K lc = p.leading_coeff();
      bool divided = false;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (leading_[k].divides(lm)) {
          p -= basis_[k].times_term(leading_[k].quotient_of(lm), lc / basis_[k].leading_coeff());
          divided = true;
          break;
        }
      }
      if (!divided) {
        rem.add_term(lm, lc);
        p.add_term(lm, -lc);
      }
    }
    return rem;
  }

  bool is_standard(const Monomial& m) const {
    return std::none_of(leading_.begin(), leading_.end(), [&](const Monomial& l) { return l.divides(m); });
  }

  std::vector<std::string> str_list() const {
    std::vector<std::string> out;
    for (const auto& g : basis_) out.push_back(g.str());
    return out;
  }

 private:
  std::vector<BiPoly<K>> basis_;
  std::vector<Monomial> leading_;
};

namespace detail {

template <class K>
struct Tracked {
  BiPoly<K> poly;
  std::vector<BiPoly<K>> cof;  // empty when not tracking
};

template <class K>
void sub_scaled(Tracked<K>& p, const Tracked<K>& g, const Monomial& m, const K& c) {
  p.poly -= g.poly.times_term(m, c);
  for (std::size_t k = 0; k < p.cof.size(); ++k) p.cof[k] -= g.cof[k].times_term(m, c);
}

template <class K>
void scale(Tracked<K>& p, const K& c) {
  p.poly = c * p.poly;
  for (auto& q : p.cof) q = c * q;
}

/// Reduces p fully against the polynomials in `set` (skipping index `skip`).
template <class K>
Tracked<K> full_reduce(Tracked<K> p, const std::vector<Tracked<K>>& set, std::size_t skip = SIZE_MAX) {
  Tracked<K> rem{{}, std::vector<BiPoly<K>>(p.cof.size())};
  while (!p.poly.is_zero()) {
    const Monomial lm = p.poly.leading_monomial();
    const K lc = p.poly.leading_coeff();
    bool divided = false;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k == skip || set[k].poly.is_zero()) continue;
      const Monomial& gl = set[k].poly.leading_monomial();
      if (gl.divides(lm)) {
        sub_scaled(p, set[k], gl.quotient_of(lm), lc / set[k].poly.leading_coeff());
        divided = true;
        break;
      }
    }
    if (!divided) {
      rem.poly.add_term(lm, lc);
      p.poly.add_term(lm, -lc);
    }
  }
  // rem + p always equals the tracked combination, and p ends at zero.
  if (!rem.cof.empty()) rem.cof = p.cof;
  return rem;
}

}  // namespace detail

/// Reduced Groebner basis under lex t > s. Pairs are processed smallest lcm
/// first (normal strategy), with the coprime-leading-monomial criterion, and
/// the result is inter-reduced, made monic and sorted by descending leading
/// monomial. Pass a transcript to record cofactors against the inputs.
template <class K>
GroebnerBasis<K> buchberger(const std::vector<BiPoly<K>>& gens, CofactorTranscript<K>* transcript = nullptr) {
  using detail::Tracked;
  const bool track = transcript != nullptr;
  std::vector<Tracked<K>> g;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].is_zero()) continue;
    Tracked<K> t{gens[k], {}};
    if (track) {
      t.cof.assign(gens.size(), BiPoly<K>{});
      t.cof[k] = BiPoly<K>::constant(one_like(gens[k].leading_coeff()));
    }
    g.push_back(std::move(t));
  }
  if (track) transcript->generators = gens;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) pairs.emplace_back(a, b);
  }
  auto pair_lcm = [&](const std::pair<std::size_t, std::size_t>& pr) {
    return Monomial::lcm(g[pr.first].poly.leading_monomial(), g[pr.second].poly.leading_monomial());
  };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
      const Monomial lx = pair_lcm(x);
      const Monomial ly = pair_lcm(y);
      if (!(lx == ly)) return lex_less(lx, ly);
      return x < y;
    });
    auto [a, b] = *best;
    pairs.erase(best);

    const Monomial la = g[a].poly.leading_monomial();
    const Monomial lb = g[b].poly.leading_monomial();
    if (la.s * lb.s == 0 && la.t * lb.t == 0) continue;  // coprime leading monomials

    const Monomial l = Monomial::lcm(la, lb);
    Tracked<K> sp{{}, track ? std::vector<BiPoly<K>>(gens.size()) : std::vector<BiPoly<K>>{}};
    const K one = one_like(g[a].poly.leading_coeff());
    detail::sub_scaled(sp, g[a], la.quotient_of(l), -(one / g[a].poly.leading_coeff()));
    detail::sub_scaled(sp, g[b], lb.quotient_of(l), one / g[b].poly.leading_coeff());

    Tracked<K> r = detail::full_reduce(std::move(sp), g);
    if (r.poly.is_zero()) continue;
    g.push_back(std::move(r));
    const std::size_t n = g.size() - 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (!g[k].poly.is_zero()) pairs.emplace_back(k, n);
    }
  }

  // Minimise: drop elements whose leading monomial another element divides.
  std::vector<Tracked<K>> minimal;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Monomial lk = g[k].poly.leading_monomial();
    bool redundant = false;
    for (std::size_t m = 0; m < g.size() && !redundant; ++m) {
      if (m == k) continue;
      const Monomial lm = g[m].poly.leading_monomial();
      // Ties between equal leading monomials keep the lowest index.
      if (lm.divides(lk) && (!(lm == lk) || m < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[k]);
  }

  // Inter-reduce and normalise.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    minimal[k] = detail::full_reduce(minimal[k], minimal, k);
  }
  for (auto& t : minimal) detail::scale(t, one_like(t.poly.leading_coeff()) / t.poly.leading_coeff());
  std::sort(minimal.begin(), minimal.end(), [](const Tracked<K>& x, const Tracked<K>& y) {
    return lex_less(y.poly.leading_monomial(), x.poly.leading_monomial());
  });

  std::vector<BiPoly<K>> basis;
  for (auto& t : minimal) {
    basis.push_back(t.poly);
    if (track) transcript->cofactors.push_back(t.cof);
  }
  return GroebnerBasis<K>(std::move(basis));
}

template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, CofactorTranscript<K>* transcript = nullptr) {
  return buchberger(ideal.generators, transcript);
}

/// True iff 1 lies in the ideal.
template <class K>
bool is_trivial(const GroebnerBasis<K>& gb) {
  return gb.size() == 1 && gb.basis()[0].is_constant() && !gb.basis()[0].is_zero();
}

/// Standard monomials, or nullopt when there are infinitely many. Sorted
/// ascending under lex t > s.
template <class K>
std::optional<std::vector<Monomial>> quotient_basis(const GroebnerBasis<K>& gb) {
  std::optional<std::uint32_t> t_bound;
  std::optional<std::uint32_t> s_bound;
  for (const Monomial& m : gb.leading_monomials()) {
    if (m.s == 0) t_bound = t_bound ? std::min(*t_bound, m.t) : m.t;
    if (m.t == 0) s_bound = s_bound ? std::min(*s_bound, m.s) : m.s;
  }
  if (!t_bound || !s_bound) return std::nullopt;
  std::vector<Monomial> out;
  for (std::uint32_t t = 0; t < *t_bound; ++t) {
    for (std::uint32_t s = 0; s < *s_bound; ++s) {
      if (gb.is_standard({s, t})) out.push_back({s, t});
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// ---------------------------------------------------------------------------
// Quotient ring elements

/// Element of K[s,t]/I, held as its normal form against a shared basis.
template <class K>
class QuotientElem {
 public:
  using basis_ptr = std::shared_ptr<const GroebnerBasis<K>>;

  QuotientElem() = default;
  QuotientElem(const BiPoly<K>& p, basis_ptr gb) : gb_(std::move(gb)), nf_(gb_->reduce(p)) {}

  const BiPoly<K>& representative() const { return nf_; }
  const basis_ptr& basis() const { return gb_; }
  bool is_zero() const { return nf_.is_zero(); }
  std::string str() const { return nf_.str(); }

  QuotientElem operator-() const { return raw(-nf_, gb_); }
  friend QuotientElem operator+(const QuotientElem& a, const QuotientElem& b) {
    return raw(a.nf_ + b.nf_, pick(a, b));  // sums of normal forms stay normal
  }
  friend QuotientElem operator-(const QuotientElem& a, const QuotientElem& b) { return raw(a.nf_ - b.nf_, pick(a, b)); }
  friend QuotientElem operator*(const QuotientElem& a, const QuotientElem& b) {
    const basis_ptr& gb = pick(a, b);
    return raw(gb->reduce(a.nf_ * b.nf_), gb);
  }
  QuotientElem& operator+=(const QuotientElem& o) { return *this = *this + o; }
  QuotientElem& operator-=(const QuotientElem& o) { return *this = *this - o; }
  QuotientElem& operator*=(const QuotientElem& o) { return *this = *this * o; }

  friend bool operator==(const QuotientElem& a, const QuotientElem& b) { return a.nf_ == b.nf_; }

 private:
  static QuotientElem raw(BiPoly<K> p, basis_ptr gb) {
    QuotientElem q;
    q.gb_ = std::move(gb);
    q.nf_ = std::move(p);
    return q;
  }
  // Default-constructed zeros carry no basis; take whichever side has one.
  static const basis_ptr& pick(const QuotientElem& a, const QuotientElem& b) { return a.gb_ ? a.gb_ : b.gb_; }

  basis_ptr gb_;
  BiPoly<K> nf_;
};

template <class K>
QuotientElem<K> normal_form(const BiPoly<K>& p, std::shared_ptr<const GroebnerBasis<K>> gb) {
  return QuotientElem<K>(p, std::move(gb));
}

/// The quotient ring K[s,t]/I as a factory for its elements.
template <class Field>
class QuotientRing {
 public:
  using K = typename Field::element_type;
  using element_type = QuotientElem<K>;

  QuotientRing(Field field, GroebnerBasis<K> gb, std::optional<std::pair<long, long>> params = std::nullopt)
      : field_(std::move(field)), gb_(std::make_shared<const GroebnerBasis<K>>(std::move(gb))), params_(params) {}

  const Field& field() const { return field_; }
  const std::shared_ptr<const GroebnerBasis<K>>& basis() const { return gb_; }
  const std::optional<std::pair<long, long>>& params() const { return params_; }

  element_type zero() const { return element(BiPoly<K>{}); }
  element_type one() const { return from_int(1); }
  element_type from_int(long long n) const { return element(BiPoly<K>::constant(field_.from_int(n))); }
  element_type element(const BiPoly<K>& p) const { return element_type(p, gb_); }
  element_type s() const { return element(BiPoly<K>::s_var(field_.one())); }
  element_type t() const { return element(BiPoly<K>::t_var(field_.one())); }

 private:
  Field field_;
  std::shared_ptr<const GroebnerBasis<K>> gb_;
  std::optional<std::pair<long, long>> params_;
};

/// Builds I for (i, j), its basis, and the quotient ring in one go.
template <class Field = RationalField>
QuotientRing<Field> structure_ring(long i, long j, const Field& field = {}) {
  auto ideal = build_ideal_I(i, j, field);
  return QuotientRing<Field>(field, buchberger(ideal), ideal.params);
}

}  // namespace matring

#endif  // MATRING_GROEBNER_HPP

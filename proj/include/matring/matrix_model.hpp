#ifndef MATRING_MATRIX_MODEL_HPP
#define MATRING_MATRIX_MODEL_HPP

// The 2x2 matrix model: witness matrices X, Y over K[s,t]/I, exact
// Sylvester solving A*Y + Y*B = C over a field, square-zero selection from
// the solution set, and polynomial-identity spot checks.

#include "matring/fib_polys.hpp"
#include "matring/groebner.hpp"
#include "matring/mat2.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace matring {

/// Thrown when a constructed object fails its own defining relations.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// True iff x^i y + y x^j = I and y^2 = 0.
template <class T>
bool satisfies_relations(const Mat2<T>& x, const Mat2<T>& y, std::uint64_t i, std::uint64_t j, const T& one) {
  const Mat2<T> id = Mat2<T>::identity(one);
  return mat_pow(x, i, one) * y + y * mat_pow(x, j, one) == id && (y * y).is_zero();
}

// ---------------------------------------------------------------------------
// Witness pair over the structure quotient

template <class T>
class WitnessPair {
 public:
  /// Checks both defining relations; throws InconsistencyError otherwise.
  WitnessPair(Mat2<T> x, Mat2<T> y, long i, long j, T one, std::string ring)
      : x_(std::move(x)), y_(std::move(y)), i_(i), j_(j), one_(std::move(one)), ring_(std::move(ring)) {
    if (!satisfies_relations(x_, y_, static_cast<std::uint64_t>(i_), static_cast<std::uint64_t>(j_), one_)) {
      throw InconsistencyError("WitnessPair: relations fail for (" + std::to_string(i_) + ", " + std::to_string(j_) +
                               ") over " + ring_);
    }
  }

  const Mat2<T>& X() const { return x_; }
  const Mat2<T>& Y() const { return y_; }
  long i() const { return i_; }
  long j() const { return j_; }
  const T& one() const { return one_; }
  const std::string& ring() const { return ring_; }

 private:
  Mat2<T> x_;
  Mat2<T> y_;
  long i_;
  long j_;
  T one_;
  std::string ring_;
};

/// Smallest alpha >= 1 with alpha*j = 1 (mod i), and beta = (alpha*j - 1)/i,
/// so alpha*j - beta*i = 1. Requires i > j >= 1 coprime.
inline std::pair<long, long> bezout_alpha_beta(long i, long j) {
  for (long alpha = 1; alpha <= i; ++alpha) {
    if ((alpha * j) % i == 1 % i) return {alpha, (alpha * j - 1) / i};
  }
  throw UnsupportedParameters("bezout_alpha_beta: exponents not coprime");
}

/// X = s^(-beta) [[t, s], [1, 0]]^(alpha+beta) and Y = E12 over K[s,t]/I,
/// using s^(-1) = (-1)^(i-j) s^(i-j-1). For i = j = 1, X = [[0, s], [1, 0]]
/// over K[s]. The pair is returned for (i, j) as given; it also satisfies
/// the swapped relation.
template <class Field>
WitnessPair<QuotientElem<typename Field::element_type>> witness_XY(const QuotientRing<Field>& ring, long i, long j) {
  using Q = QuotientElem<typename Field::element_type>;
  auto [hi, lo] = canonical_pair(i, j);
  const Q one = ring.one();
  const Q zero = ring.zero();
  Mat2<Q> x;
  if (hi == 1 && lo == 1) {
    x = {zero, ring.s(), one, zero};
  } else {
    auto [alpha, beta] = bezout_alpha_beta(hi, lo);
    const auto cp = companion_power(static_cast<std::size_t>(alpha + beta), ring.field());
    const Mat2<Q> c{ring.element(cp.a), ring.element(cp.b), ring.element(cp.c), ring.element(cp.d)};
    const long diff = hi - lo;
    Q s_inv = one;
    for (long k = 0; k < diff - 1; ++k) s_inv = s_inv * ring.s();
    if (diff % 2 != 0) s_inv = -s_inv;
    Q scale = one;
    for (long k = 0; k < beta; ++k) scale = scale * s_inv;
    x = scale * c;
  }
  Mat2<Q> y{zero, one, zero, zero};
  return WitnessPair<Q>(std::move(x), std::move(y), i, j, one, ring.field().name() + "[s,t]/I");
}

template <class Field>
WitnessPair<QuotientElem<typename Field::element_type>> witness_XY(long i, long j, const Field& field = {}) {
  return witness_XY(structure_ring(i, j, field), i, j);
}

// ---------------------------------------------------------------------------
// Sylvester equation A*Y + Y*B = C over a field

template <class K>
struct SylvesterSolution {
  std::optional<Mat2<K>> particular;  // nullopt: no solution
  std::vector<Mat2<K>> homogeneous;   // basis of {H : A*H + H*B = 0}

  bool solvable() const { return particular.has_value(); }
  std::size_t dimension() const { return solvable() ? homogeneous.size() : 0; }
};

/// Flattens Y row-major into (y11, y12, y21, y22) and solves the 4x4 system
/// by exact Gauss-Jordan elimination.
template <class Field>
SylvesterSolution<typename Field::element_type> solve_sylvester(const Mat2<typename Field::element_type>& A,
                                                                const Mat2<typename Field::element_type>& B,
                                                                const Mat2<typename Field::element_type>& C,
                                                                const Field& field) {
  using K = typename Field::element_type;
  // Row (r, c) of the system: sum_k A[r][k] Y[k][c] + sum_k Y[r][k] B[k][c].
  std::array<std::array<K, 5>, 4> m;
  for (auto& row : m) row.fill(field.zero());
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      auto& row = m[static_cast<std::size_t>(2 * r + c)];
      for (int k = 0; k < 2; ++k) {
        row[static_cast<std::size_t>(2 * k + c)] += A.at(r, k);
        row[static_cast<std::size_t>(2 * r + k)] += B.at(k, c);
      }
      row[4] = C.at(r, c);
    }
  }
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 4 && rank < 4; ++col) {
    std::size_t piv = rank;
    while (piv < 4 && m[piv][col].is_zero()) ++piv;
    if (piv == 4) continue;
    std::swap(m[piv], m[rank]);
    const K inv = field.one() / m[rank][col];
    for (auto& v : m[rank]) v = v * inv;
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const K f = m[r][col];
      for (std::size_t k = 0; k < 5; ++k) m[r][k] -= f * m[rank][k];
    }
    pivot_col[rank] = static_cast<int>(col);
    ++rank;
  }
  SylvesterSolution<K> out;
  for (std::size_t r = rank; r < 4; ++r) {
    if (!m[r][4].is_zero()) return out;  // inconsistent
  }
  auto to_mat = [](const std::array<K, 4>& v) { return Mat2<K>{v[0], v[1], v[2], v[3]}; };
  std::array<bool, 4> is_pivot{false, false, false, false};
  for (std::size_t r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[r])] = true;

  std::array<K, 4> part;
  part.fill(field.zero());
  for (std::size_t r = 0; r < rank; ++r) part[static_cast<std::size_t>(pivot_col[r])] = m[r][4];
  out.particular = to_mat(part);

  for (std::size_t free = 0; free < 4; ++free) {
    if (is_pivot[free]) continue;
    std::array<K, 4> h;
    h.fill(field.zero());
    h[free] = field.one();
    for (std::size_t r = 0; r < rank; ++r) h[static_cast<std::size_t>(pivot_col[r])] = -m[r][free];
    out.homogeneous.push_back(to_mat(h));
  }
  return out;
}

/// Membership of Y in the affine solution set, checked by substitution.
template <class K>
bool solves_sylvester(const Mat2<K>& A, const Mat2<K>& B, const Mat2<K>& C, const Mat2<K>& Y) {
  return A * Y + Y * B == C;
}

namespace detail {

/// Roots in the field of c0 + c1*x + c2*x^2 (not all zero).
template <class Field>
std::vector<typename Field::element_type> quadratic_roots(const typename Field::element_type& c0,
                                                          const typename Field::element_type& c1,
                                                          const typename Field::element_type& c2,
                                                          const Field& field) {
  using K = typename Field::element_type;
  std::vector<K> roots;
  if constexpr (requires { field.elements(); }) {
    for (const K& x : field.elements()) {
      if ((c0 + c1 * x + c2 * x * x).is_zero()) roots.push_back(x);
    }
    return roots;
  } else {
    if (c2.is_zero()) {
      if (!c1.is_zero()) roots.push_back(-c0 / c1);
      return roots;
    }
    const K disc = c1 * c1 - field.from_int(4) * c2 * c0;
    const auto sq = field.sqrt(disc);
    if (!sq) return roots;
    const K two_a = field.from_int(2) * c2;
    roots.push_back((-c1 + *sq) / two_a);
    if (!sq->is_zero()) roots.push_back((-c1 - *sq) / two_a);
    return roots;
  }
}

}  // namespace detail

/// All square-zero solutions of A*Y + Y*B = C for an invertible scalar C,
/// one per projective direction. Every nonzero square-zero Y equals
/// kappa * R(v) with R(v) = [[-v1 v2, v1^2], [-v2^2, v1 v2]]; the equation
/// then asks M(v) = A R(v) + R(v) B to be a nonzero multiple of C, which
/// cuts out the common roots of three binary quadratic forms in v.
/// Returns nothing when solve_sylvester reports no solution; each returned
/// Y is re-checked by substitution.
template <class Field>
std::vector<Mat2<typename Field::element_type>> square_zero_solutions(const Mat2<typename Field::element_type>& A,
                                                                      const Mat2<typename Field::element_type>& B,
                                                                      const Mat2<typename Field::element_type>& C,
                                                                      const Field& field) {
  using K = typename Field::element_type;
  const SylvesterSolution<K> affine = solve_sylvester(A, B, C, field);
  std::vector<Mat2<K>> out;
  if (!affine.solvable()) return out;

  auto R = [](const K& v1, const K& v2) { return Mat2<K>{-(v1 * v2), v1 * v1, -(v2 * v2), v1 * v2}; };
  auto M = [&](const K& v1, const K& v2) {
    const Mat2<K> r = R(v1, v2);
    return A * r + r * B;
  };
  // Proportionality of M(v) to C: M_ab * C_cd - M_cd * C_ab = 0 for every
  // pair of entries, each a binary quadratic form in v.
  auto proportional_forms = [&](const K& v1, const K& v2) {
    const Mat2<K> m = M(v1, v2);
    std::vector<K> forms;
    const std::array<std::pair<int, int>, 4> idx{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        forms.push_back(m.at(idx[p].first, idx[p].second) * C.at(idx[q].first, idx[q].second) -
                        m.at(idx[q].first, idx[q].second) * C.at(idx[p].first, idx[p].second));
      }
    }
    return forms;
  };
  auto try_direction = [&](const K& v1, const K& v2) {
    for (const K& f : proportional_forms(v1, v2)) {
      if (!f.is_zero()) return;
    }
    const Mat2<K> m = M(v1, v2);
    // kappa * m = C; pick any nonzero entry of C to solve for kappa.
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (C.at(r, c).is_zero()) continue;
        if (m.at(r, c).is_zero()) return;
        const K kappa = C.at(r, c) / m.at(r, c);
        Mat2<K> y = kappa * R(v1, v2);
        if (!solves_sylvester(A, B, C, y)) {
          throw InconsistencyError("square_zero_solutions: candidate outside the Sylvester solution set");
        }
        out.push_back(std::move(y));
        return;
      }
    }
  };

  const K zero = field.zero();
  const K one = field.one();
  // Direction v = (0, 1).
  try_direction(zero, one);
  // Directions v = (1, lambda): each form is a quadratic in lambda; read its
  // coefficients by interpolation at lambda = 0, 1, -1.
  const auto f0 = proportional_forms(one, zero);
  const auto f1 = proportional_forms(one, one);
  const auto fm = proportional_forms(one, -one);
  const K two = field.from_int(2);
  std::optional<std::vector<K>> candidates;
  for (std::size_t k = 0; k < f0.size(); ++k) {
    const K c0 = f0[k];
    K c1, c2;
    if (field.characteristic() == 2) {
      // Interpolation through 0, 1, -1 degenerates; fall back to enumeration.
      candidates.reset();
      break;
    }
    c2 = (f1[k] + fm[k] - two * c0) / two;
    c1 = (f1[k] - fm[k]) / two;
    if (c0.is_zero() && c1.is_zero() && c2.is_zero()) continue;
    auto roots = detail::quadratic_roots(c0, c1, c2, field);
    if (!candidates) {
      candidates = roots;
    } else {
      std::vector<K> kept;
      for (const K& r : *candidates) {
        if ((c0 + c1 * r + c2 * r * r).is_zero()) kept.push_back(r);
      }
      candidates = kept;
    }
  }
  if (candidates) {
    for (const K& lambda : *candidates) try_direction(one, lambda);
  } else if constexpr (requires { field.elements(); }) {
    for (const K& lambda : field.elements()) try_direction(one, lambda);
  } else {
    // Every direction (1, lambda) satisfies the forms; small values suffice
    // because only finitely many make M(v) vanish.
    for (long k = 0; k < 8 && out.empty(); ++k) try_direction(one, field.from_int(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial identities of M_2

template <class T>
Mat2<T> hall_defect(const Mat2<T>& x, const Mat2<T>& y, const Mat2<T>& z) {
  const Mat2<T> c = commutator(x, y);
  return c * c * z - z * c * c;
}

/// Standard polynomial S_4 = sum over permutations of sign * product.
template <class T>
Mat2<T> standard_s4(const std::array<Mat2<T>, 4>& xs) {
  std::array<int, 4> perm{0, 1, 2, 3};
  Mat2<T> acc = xs[0] - xs[0];
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    }
    Mat2<T> term = xs[perm[0]] * xs[perm[1]] * xs[perm[2]] * xs[perm[3]];
    acc = inversions % 2 == 0 ? acc + term : acc - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

struct PiReport {
  std::string ring;
  std::size_t samples = 0;
  std::size_t hall_holds = 0;
  std::size_t s4_holds = 0;
  bool ok() const { return hall_holds == samples && s4_holds == samples; }
};

/// Random samples over a field; `draw` yields field elements.
template <class Field, class Draw>
PiReport pi_identity_check_with(const Field& field, std::size_t samples, Draw&& draw) {
  using K = typename Field::element_type;
  auto mat = [&] { return Mat2<K>{draw(), draw(), draw(), draw()}; };
  PiReport rep;
  rep.ring = "M2(" + field.name() + ")";
  for (std::size_t k = 0; k < samples; ++k) {
    const Mat2<K> x = mat(), y = mat(), z = mat(), w = mat();
    ++rep.samples;
    if (hall_defect(x, y, z).is_zero()) ++rep.hall_holds;
    if (standard_s4<K>({x, y, z, w}).is_zero()) ++rep.s4_holds;
  }
  return rep;
}

/// Default sampler: small integers (and small fractions over Q).
template <class Field>
PiReport pi_identity_check(const Field& field, std::size_t samples, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  auto draw = [&] {
    if (field.characteristic() == 0) return field.from_rational(Rational(BigInt(num(rng)), BigInt(den(rng))));
    return field.from_int(num(rng));
  };
  return pi_identity_check_with(field, samples, draw);
}

}  // namespace matring

#endif  // MATRING_MATRIX_MODEL_HPP

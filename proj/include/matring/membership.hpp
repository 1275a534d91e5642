#ifndef MATRING_MEMBERSHIP_HPP
#define MATRING_MEMBERSHIP_HPP

// Decision procedures for whether the algebra x^i y + y x^j = 1, y^2 = 0 over
// a field k admits a nonzero 2x2 matrix representation over k, for
// k = Q, F_2 and F_p (p an odd prime).
//
// decide_Q, decide_Z2, decide_Zp, decide_ii_Zp and decide_corollaries apply
// the closed-form congruence and 2-adic valuation criteria as stated.
// decide_Q_semantic recomputes the rational verdict from the eigenvalue
// analysis (rational roots of trace polynomials, root orders) and shares no
// code with decide_Q.

#include "matring/exact_arith.hpp"
#include "matring/fib_polys.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matring {

enum class RuleTag {
  NONE,
  ODD_ODD,
  DIAG_MOD4,
  MOD6_LIST,
  Z2_MOD3,
  ZP_CASE_I,
  ZP_CASE_II,
  ZP_CASE_III,
  ZP_CASE_IV,
  ZP_CASE_V,
  II_VALUATION,    // nu2(p^2 - 1) >= nu2(i) + 2
  COR_PARITY_GCD,  // p = 3 mod 4: distinct parity and the gcd condition
  COR_RESIDUE_2P,  // p = 3 mod 4: residue pairs mod 2p
  COR_VALUATION,   // p = 3 mod 4: nu2(j - ip) <= nu2(p + 1) and the gcd condition
  DIAG_MOD8,       // p = 3: (2,2), (6,6) mod 8
};

inline const char* to_string(RuleTag t) {
  switch (t) {
    case RuleTag::NONE: return "NONE";
    case RuleTag::ODD_ODD: return "ODD_ODD";
    case RuleTag::DIAG_MOD4: return "DIAG_MOD4";
    case RuleTag::MOD6_LIST: return "MOD6_LIST";
    case RuleTag::Z2_MOD3: return "Z2_MOD3";
    case RuleTag::ZP_CASE_I: return "ZP_CASE_I";
    case RuleTag::ZP_CASE_II: return "ZP_CASE_II";
    case RuleTag::ZP_CASE_III: return "ZP_CASE_III";
    case RuleTag::ZP_CASE_IV: return "ZP_CASE_IV";
    case RuleTag::ZP_CASE_V: return "ZP_CASE_V";
    case RuleTag::II_VALUATION: return "II_VALUATION";
    case RuleTag::COR_PARITY_GCD: return "COR_PARITY_GCD";
    case RuleTag::COR_RESIDUE_2P: return "COR_RESIDUE_2P";
    case RuleTag::COR_VALUATION: return "COR_VALUATION";
    case RuleTag::DIAG_MOD8: return "DIAG_MOD8";
  }
  return "?";
}

/// Outcome of a decision procedure. `fired_rule` is the first rule (in the
/// order the criterion lists them) that holds; NONE exactly when the verdict
/// is false.
class DecisionTrace {
 public:
  DecisionTrace(std::string field, std::optional<std::uint64_t> p, long long i, long long j)
      : field_(std::move(field)), p_(p), i_(i), j_(j) {}

  bool verdict() const { return rule_ != RuleTag::NONE; }
  RuleTag fired_rule() const { return rule_; }
  const std::string& field() const { return field_; }
  const std::optional<std::uint64_t>& p() const { return p_; }
  long long i() const { return i_; }
  long long j() const { return j_; }
  /// Auxiliary quantities in insertion order, as display strings.
  const std::vector<std::pair<std::string, std::string>>& aux() const { return aux_; }
  const std::vector<std::string>& notes() const { return notes_; }

  void fire(RuleTag t) {
    if (rule_ == RuleTag::NONE) rule_ = t;
  }
  void set_aux(std::string key, std::string value) { aux_.emplace_back(std::move(key), std::move(value)); }
  void note(std::string text) { notes_.push_back(std::move(text)); }

 private:
  std::string field_;
  std::optional<std::uint64_t> p_;
  long long i_;
  long long j_;
  RuleTag rule_ = RuleTag::NONE;
  std::vector<std::pair<std::string, std::string>> aux_;
  std::vector<std::string> notes_;
};

namespace detail {

inline void require_positive(long long i, long long j) {
  if (i < 1 || j < 1) throw UnsupportedParameters("exponents i, j must be >= 1");
}

inline void require_odd_prime(std::uint64_t p) {
  if (p == 2) throw UnsupportedParameters("p = 2 has its own procedure (decide_Z2)");
  if (p < 3 || !is_prime(p)) throw UnsupportedParameters(std::to_string(p) + " is not an odd prime");
}

inline bool pair_mod_in(long long i, long long j, long long m, std::initializer_list<std::pair<long long, long long>> list) {
  const auto key = std::make_pair(floor_mod(i, m), floor_mod(j, m));
  for (const auto& e : list) {
    if (e == key) return true;
  }
  return false;
}

/// nu2(j - ip) < nu2(p+1) + min(nu2(j-i), nu2(p-1)) and j - i is not an odd
/// multiple of gcd(j - ip, (p+1)(j-i), p^2 - 1), gcds on absolute values.
inline bool zp_case_v(const BigInt& p, const BigInt& i, const BigInt& j) {
  const BigInt jip = j - i * p;
  const BigInt g = big_gcd(big_gcd(big_abs(jip), big_abs((p + 1) * (j - i))), p * p - 1);
  const Valuation bound = nu2(p + 1) + std::min(nu2(j - i), nu2(p - 1)).value();
  return nu2(jip) < bound && !is_odd_multiple(j - i, g);
}

}  // namespace detail

/// Over Q: i = j with i != 0 mod 4, or (i, j) = (1,1) mod 2, or
/// (i, j) = (1,2), (2,1), (4,5), (5,4) mod 6.
inline DecisionTrace decide_Q(long long i, long long j) {
  detail::require_positive(i, j);
  DecisionTrace tr("Q", std::nullopt, i, j);
  if (i == j && i % 4 != 0) tr.fire(RuleTag::DIAG_MOD4);
  if (i % 2 == 1 && j % 2 == 1) tr.fire(RuleTag::ODD_ODD);
  if (detail::pair_mod_in(i, j, 6, {{1, 2}, {2, 1}, {4, 5}, {5, 4}})) tr.fire(RuleTag::MOD6_LIST);
  return tr;
}

namespace detail {

/// a + b r in Q[r]/(r^2 - c r + 1).
struct QuadElem {
  Rational a, b;
  friend bool operator==(const QuadElem&, const QuadElem&) = default;
};

inline QuadElem quad_mul(const QuadElem& x, const QuadElem& y, const Rational& c) {
  // r^2 = c r - 1
  const Rational bb = x.b * y.b;
  return {x.a * y.a - bb, x.a * y.b + x.b * y.a + bb * c};
}

inline QuadElem quad_pow_r(long long e, const Rational& c) {
  QuadElem base = e >= 0 ? QuadElem{Rational(0), Rational(1)} : QuadElem{c, Rational(-1)};  // r or r^{-1} = c - r
  unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e) : static_cast<unsigned long long>(-e);
  QuadElem acc{Rational(1), Rational(0)};
  while (k != 0) {
    if (k & 1ULL) acc = quad_mul(acc, base, c);
    base = quad_mul(base, base, c);
    k >>= 1;
  }
  return acc;
}

}  // namespace detail

/// Rational verdict from the eigenvalue analysis: the diagonal case looks for
/// a rational root a in {+-1, +-2} of f_n(x - 2) (i = 2n); otherwise, unless
/// i and j are both odd, an eigenvalue pair r, 1/r with r + 1/r = c rational,
/// f_{i+j}(c) = -2 and r^(j-i) != -1, with c in [-2, 2].
inline DecisionTrace decide_Q_semantic(long long i, long long j) {
  detail::require_positive(i, j);
  DecisionTrace tr("Q", std::nullopt, i, j);
  if (i == j) {
    if (i % 2 == 1) {
      tr.fire(RuleTag::ODD_ODD);
      return tr;
    }
    const auto n = static_cast<std::size_t>(i / 2);
    const auto fn = trace_poly(n);
    tr.set_aux("n", std::to_string(n));
    for (int a : {1, -1, 2, -2}) {
      if (fn.eval(Rational(a - 2)).is_zero()) {
        tr.set_aux("root_a", std::to_string(a));
        tr.fire(RuleTag::DIAG_MOD4);
      }
    }
    return tr;
  }
  if (i % 2 == 1 && j % 2 == 1) {
    tr.fire(RuleTag::ODD_ODD);
    return tr;
  }
  const auto f = trace_poly(static_cast<std::size_t>(i + j));
  for (int c = -2; c <= 2; ++c) {
    if (!(f.eval(Rational(c)) + Rational(2)).is_zero()) continue;
    tr.set_aux("c", std::to_string(c));
    if (c == 2 || c == -2) {
      tr.note("c = " + std::to_string(c) + " gives a double eigenvalue; rejected");
      continue;
    }
    const auto rp = detail::quad_pow_r(j - i, Rational(c));
    const bool minus_one = rp == detail::QuadElem{Rational(-1), Rational(0)};
    if (c == 1) tr.note("c = 1: r^2 - r + 1 = 0 gives r^3 = -1 and r^6 = 1");
    if (c == 0) tr.note("c = 0: r^2 = -1");
    if (!minus_one) {
      if (tr.fired_rule() == RuleTag::NONE) tr.set_aux("root_c", std::to_string(c));
      tr.fire(c == 1 ? RuleTag::MOD6_LIST : RuleTag::ODD_ODD);
    }
  }
  return tr;
}

/// Over F_2: (i, j) = (1,1) mod 2 or (1,2), (2,1) mod 3.
inline DecisionTrace decide_Z2(long long i, long long j) {
  detail::require_positive(i, j);
  DecisionTrace tr("F2", 2, i, j);
  if (i % 2 == 1 && j % 2 == 1) tr.fire(RuleTag::ODD_ODD);
  if (detail::pair_mod_in(i, j, 3, {{1, 2}, {2, 1}})) tr.fire(RuleTag::Z2_MOD3);
  return tr;
}

/// Over F_p, p an odd prime: the five valuation cases; for i = j cases II-IV
/// are vacuous, (I) reads nu2(p-1) >= nu2(i)+1 and (V) nu2(p+1) >= nu2(i)+1.
/// Case (V) is tested in both orientations.
inline DecisionTrace decide_Zp(std::uint64_t p, long long i, long long j) {
  detail::require_odd_prime(p);
  detail::require_positive(i, j);
  DecisionTrace tr("F" + std::to_string(p), p, i, j);
  const BigInt P(static_cast<unsigned long>(p));
  const BigInt I(static_cast<long>(i)), J(static_cast<long>(j));
  const Valuation v_ji = nu2(J - I), v_pm = nu2(P - 1), v_pp = nu2(P + 1), v_sum = nu2(I + J);
  tr.set_aux("nu2(j-i)", v_ji.str());
  tr.set_aux("nu2(p-1)", v_pm.str());
  tr.set_aux("nu2(p+1)", v_pp.str());
  tr.set_aux("nu2(i+j)", v_sum.str());
  if (i == j) {
    const Valuation v_i = nu2(I);
    tr.set_aux("nu2(i)", v_i.str());
    if (v_pm >= v_i + 1) tr.fire(RuleTag::ZP_CASE_I);
    if (v_pp >= v_i + 1) tr.fire(RuleTag::ZP_CASE_V);
    return tr;
  }
  const BigInt d = big_gcd(big_abs(J - I), P - 1);
  const BigInt e = big_gcd(I + J, P - 1);
  tr.set_aux("d", d.get_str());
  tr.set_aux("e", e.get_str());
  if (v_ji > v_pm && v_pm >= v_sum) tr.fire(RuleTag::ZP_CASE_I);
  if (v_ji == v_pm && v_pm != v_sum) tr.fire(RuleTag::ZP_CASE_II);
  if (v_ji < v_pm && !is_odd_multiple(d, e)) tr.fire(RuleTag::ZP_CASE_III);
  if (v_ji < v_pm && (I + J) % P == 0 && I % P != 0) tr.fire(RuleTag::ZP_CASE_IV);
  if (detail::zp_case_v(P, I, J) || detail::zp_case_v(P, J, I)) tr.fire(RuleTag::ZP_CASE_V);
  return tr;
}

/// Diagonal pairs over F_p: nu2(p^2 - 1) >= nu2(i) + 2.
inline DecisionTrace decide_ii_Zp(std::uint64_t p, long long i) {
  detail::require_odd_prime(p);
  detail::require_positive(i, i);
  DecisionTrace tr("F" + std::to_string(p), p, i, i);
  const BigInt P(static_cast<unsigned long>(p));
  const Valuation lhs = nu2(P * P - 1);
  const Valuation rhs = nu2(BigInt(static_cast<long>(i))) + 2;
  tr.set_aux("nu2(p^2-1)", lhs.str());
  tr.set_aux("nu2(i)+2", rhs.str());
  if (lhs >= rhs) tr.fire(RuleTag::II_VALUATION);
  return tr;
}

/// p = 3: (1,1) mod 2; (1,2), (2,1), (4,5), (5,4) mod 6; (2,2), (6,6) mod 8.
inline DecisionTrace decide_p3_list(long long i, long long j) {
  detail::require_positive(i, j);
  DecisionTrace tr("F3", 3, i, j);
  if (i % 2 == 1 && j % 2 == 1) tr.fire(RuleTag::ODD_ODD);
  if (detail::pair_mod_in(i, j, 6, {{1, 2}, {2, 1}, {4, 5}, {5, 4}})) tr.fire(RuleTag::MOD6_LIST);
  if (detail::pair_mod_in(i, j, 8, {{2, 2}, {6, 6}})) tr.fire(RuleTag::DIAG_MOD8);
  return tr;
}

/// Primes p = 2^a (2b+1) - 1 with a >= 2, i.e. p = 3 mod 4.
inline DecisionTrace decide_p3mod4_family(std::uint64_t p, long long i, long long j) {
  detail::require_odd_prime(p);
  detail::require_positive(i, j);
  if (p % 4 != 3) throw UnsupportedParameters("p = " + std::to_string(p) + " is not of the form 2^a(2b+1) - 1 with a >= 2");
  DecisionTrace tr("F" + std::to_string(p), p, i, j);
  const BigInt P(static_cast<unsigned long>(p));
  const BigInt I(static_cast<long>(i)), J(static_cast<long>(j));
  const Valuation a = nu2(P + 1);
  tr.set_aux("a", a.str());
  if (i % 2 == 1 && j % 2 == 1) tr.fire(RuleTag::ODD_ODD);
  if ((i + j) % 2 == 1 && !is_odd_multiple(big_gcd(big_abs(J - I), P - 1), big_gcd(J + I, P - 1))) {
    tr.fire(RuleTag::COR_PARITY_GCD);
  }
  const long long pp = static_cast<long long>(p);
  for (long long l = 1; l <= pp - 1; ++l) {
    const long long A = floor_mod(l * (pp + 1), 2 * pp);
    const long long B = floor_mod((pp + 1) * (pp - l) + pp, 2 * pp);
    if (detail::pair_mod_in(i, j, 2 * pp, {{A, B}, {B, A}})) {
      tr.set_aux("l", std::to_string(l));
      tr.fire(RuleTag::COR_RESIDUE_2P);
      break;
    }
  }
  auto valuation_case = [&](const BigInt& u, const BigInt& v) {
    const BigInt g = big_gcd(big_gcd(big_abs(v - u * P), big_abs((P + 1) * (v - u))), P * P - 1);
    return nu2(v - u * P) <= a && !is_odd_multiple(v - u, g);
  };
  if (valuation_case(I, J) || valuation_case(J, I)) tr.fire(RuleTag::COR_VALUATION);
  return tr;
}

/// Explicit corollary criteria: the p = 3 congruence list, otherwise the
/// p = 3 mod 4 family. Other p are rejected.
inline DecisionTrace decide_corollaries(std::uint64_t p, long long i, long long j) {
  detail::require_odd_prime(p);
  if (p == 3) return decide_p3_list(i, j);
  return decide_p3mod4_family(p, i, j);
}

}  // namespace matring

#endif  // MATRING_MEMBERSHIP_HPP

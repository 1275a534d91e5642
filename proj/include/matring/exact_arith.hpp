#ifndef MATRING_EXACT_ARITH_HPP
#define MATRING_EXACT_ARITH_HPP

// Exact coefficient arithmetic: rationals, prime fields F_p, the quadratic
// extension F_{p^2}, and the small number-theoretic predicates used by the
// membership decision procedures.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace matring {

using BigInt = mpz_class;

/// Thrown when parameters fall outside what an operation supports
/// (non-coprime exponents, non-prime moduli, ...).
class UnsupportedParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Rational

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT(implicit)
  Rational(const BigInt& n) : q_(n) {}                  // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_.get_mpq_t()), 1) == 0; }
  int sign() const { return sgn(q_); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    Rational r;
    mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  std::string str() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  // Integer fast paths skip the gcd normalisation mpq_* performs; the
  // polynomial identity sweeps live almost entirely on integers.
  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    if (a.is_integer() && b.is_integer()) {
      mpz_add(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()),
              mpq_numref(b.q_.get_mpq_t()));
    } else {
      mpq_add(r.q_.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    }
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    if (a.is_integer() && b.is_integer()) {
      mpz_sub(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()),
              mpq_numref(b.q_.get_mpq_t()));
    } else {
      mpq_sub(r.q_.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    }
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    if (a.is_integer() && b.is_integer()) {
      mpz_mul(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()),
              mpq_numref(b.q_.get_mpq_t()));
    } else {
      mpq_mul(r.q_.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    }
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

// ---------------------------------------------------------------------------
// Primes

/// Trial division; moduli in this library stay desk-sized.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

/// Smallest quadratic nonresidue modulo an odd prime p.
inline std::uint32_t smallest_nonresidue(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw UnsupportedParameters("smallest_nonresidue: p must be an odd prime");
  for (std::uint32_t u = 2; u < p; ++u) {
    if (pow_mod(u, (p - 1) / 2, p) == p - 1) return u;
  }
  throw std::logic_error("smallest_nonresidue: none found");
}

// ---------------------------------------------------------------------------
// F_p

/// Element of the prime field F_p. The modulus travels with the value;
/// mixing moduli is a programming error and throws.
class Fp {
 public:
  Fp() = default;
  Fp(long long value, std::uint32_t p) : p_(p) {
    if (p == 0) throw std::invalid_argument("Fp: zero modulus");
    long long m = value % static_cast<long long>(p);
    if (m < 0) m += p;
    v_ = static_cast<std::uint32_t>(m);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return raw(static_cast<std::uint32_t>(pow_mod(v_, p_ - 2, p_)), p_);
  }
  Fp pow(std::uint64_t e) const { return raw(static_cast<std::uint32_t>(pow_mod(v_, e, p_)), p_); }

  std::string str() const { return std::to_string(v_); }

  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator+(Fp a, Fp b) {
    check(a, b);
    std::uint32_t s = a.v_ + b.v_;
    return raw(s >= a.p_ ? s - a.p_ : s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    check(a, b);
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    check(a, b);
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), a.p_);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

 private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  static void check(Fp a, Fp b) {
    if (a.p_ != b.p_ || a.p_ == 0) throw std::invalid_argument("Fp: modulus mismatch");
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

// ---------------------------------------------------------------------------
// F_{p^2} = F_p[w]/(w^2 - u), u the smallest nonresidue.

class Fp2 {
 public:
  Fp2() = default;
  Fp2(Fp a, Fp b, std::uint32_t u) : a_(a), b_(b), u_(u) {}

  Fp re() const { return a_; }
  Fp im() const { return b_; }
  std::uint32_t modulus() const { return a_.modulus(); }
  std::uint32_t nonresidue() const { return u_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const { return b_.is_zero(); }

  /// z^p, via conjugation: w^p = -w because u is a nonresidue.
  Fp2 frobenius() const { return {a_, -b_, u_}; }
  Fp norm() const { return a_ * a_ - Fp(u_, modulus()) * b_ * b_; }

  Fp2 inverse() const {
    if (is_zero()) throw std::domain_error("Fp2: inverse of zero");
    Fp n = norm().inverse();
    return {a_ * n, -b_ * n, u_};
  }

  Fp2 pow(std::uint64_t e) const {
    Fp2 result(Fp(1, modulus()), Fp(0, modulus()), u_);
    Fp2 base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }
  /// Signed exponent; negative powers go through the inverse.
  Fp2 zpow(long long e) const { return e >= 0 ? pow(static_cast<std::uint64_t>(e)) : inverse().pow(static_cast<std::uint64_t>(-e)); }

  std::string str() const { return a_.str() + "+" + b_.str() + "w"; }

  Fp2 operator-() const { return {-a_, -b_, u_}; }
  friend Fp2 operator+(const Fp2& x, const Fp2& y) { return {x.a_ + y.a_, x.b_ + y.b_, x.u_}; }
  friend Fp2 operator-(const Fp2& x, const Fp2& y) { return {x.a_ - y.a_, x.b_ - y.b_, x.u_}; }
  friend Fp2 operator*(const Fp2& x, const Fp2& y) {
    Fp u(x.u_, x.modulus());
    return {x.a_ * y.a_ + u * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.u_};
  }
  friend Fp2 operator/(const Fp2& x, const Fp2& y) { return x * y.inverse(); }
  friend bool operator==(const Fp2& x, const Fp2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Fp a_;
  Fp b_;
  std::uint32_t u_ = 0;
};

inline Fp2 fp2_frobenius(const Fp2& z) { return z.frobenius(); }

// ---------------------------------------------------------------------------
// Fields. Generic algorithms take one of these to mint constants.

struct RationalField {
  using element_type = Rational;

  Rational zero() const { return {}; }
  Rational one() const { return {1}; }
  Rational from_int(long long n) const { return {n}; }
  Rational from_integer(const BigInt& n) const { return {n}; }
  Rational from_rational(const Rational& r) const { return r; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  bool is_finite() const { return false; }

  std::optional<Rational> sqrt(const Rational& r) const {
    if (r.sign() < 0) return std::nullopt;
    BigInt n = r.numerator();
    BigInt d = r.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    BigInt rn;
    BigInt rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  /// Accepts "n" or "n/d".
  Rational parse(std::string_view text) const {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
  }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
 public:
  using element_type = Fp;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw UnsupportedParameters("PrimeField: " + std::to_string(p) + " is not prime");
  }

  std::uint32_t p() const { return p_; }
  Fp zero() const { return {0, p_}; }
  Fp one() const { return {1, p_}; }
  Fp from_int(long long n) const { return {n, p_}; }
  Fp from_integer(const BigInt& n) const {
    BigInt m = n % p_;
    if (m < 0) m += p_;
    return {m.get_si(), p_};
  }
  Fp from_rational(const Rational& r) const { return from_integer(r.numerator()) / from_integer(r.denominator()); }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }
  bool is_finite() const { return true; }

  std::vector<Fp> elements() const {
    std::vector<Fp> out;
    out.reserve(p_);
    for (std::uint32_t v = 0; v < p_; ++v) out.emplace_back(v, p_);
    return out;
  }

  std::optional<Fp> sqrt(Fp a) const {
    for (std::uint32_t v = 0; v < p_; ++v) {
      Fp c(v, p_);
      if (c * c == a) return c;
    }
    return std::nullopt;
  }

  Fp parse(std::string_view text) const { return from_rational(RationalField{}.parse(text)); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// F_{p^2} for odd p, presented with the smallest nonresidue.
class Fp2Field {
 public:
  explicit Fp2Field(std::uint32_t p) : base_(p), u_(smallest_nonresidue(p)) {}

  std::uint32_t p() const { return base_.p(); }
  std::uint32_t nonresidue() const { return u_; }
  Fp2 make(long long a, long long b) const { return {base_.from_int(a), base_.from_int(b), u_}; }
  Fp2 embed(Fp a) const { return {a, base_.zero(), u_}; }
  Fp2 zero() const { return make(0, 0); }
  Fp2 one() const { return make(1, 0); }
  const PrimeField& base() const { return base_; }

  std::vector<Fp2> elements() const {
    std::vector<Fp2> out;
    out.reserve(static_cast<std::size_t>(p()) * p());
    for (std::uint32_t a = 0; a < p(); ++a) {
      for (std::uint32_t b = 0; b < p(); ++b) out.push_back(make(a, b));
    }
    return out;
  }

  /// A generator of the cyclic group F_{p^2}^*, found by exhaustive order test.
  Fp2 primitive_element() const {
    const std::uint64_t order = static_cast<std::uint64_t>(p()) * p() - 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t n = order;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime_factors.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) prime_factors.push_back(n);
    for (const Fp2& z : elements()) {
      if (z.is_zero()) continue;
      bool generator = true;
      for (std::uint64_t q : prime_factors) {
        if (z.pow(order / q) == one()) {
          generator = false;
          break;
        }
      }
      if (generator) return z;
    }
    throw std::logic_error("Fp2Field: no primitive element");
  }

 private:
  PrimeField base_;
  std::uint32_t u_;
};

// ---------------------------------------------------------------------------
// 2-adic valuation and friends

/// Nonnegative integer or infinity; infinity compares above every finite value.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  explicit Valuation(std::uint64_t v) : v_(v) {}

  bool is_infinite() const { return !v_.has_value(); }
  std::uint64_t value() const {
    if (!v_) throw std::logic_error("Valuation: infinite");
    return *v_;
  }
  std::string str() const { return v_ ? std::to_string(*v_) : "inf"; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.v_ <=> *b.v_;
  }
  Valuation operator+(std::uint64_t k) const { return v_ ? Valuation(*v_ + k) : infinity(); }

 private:
  Valuation() = default;
  std::optional<std::uint64_t> v_;
};

inline Valuation nu2(const BigInt& n) {
  if (n == 0) return Valuation::infinity();
  return Valuation(mpz_scan1(n.get_mpz_t(), 0));
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// True iff b != 0, b | a and a/b is odd. is_odd_multiple(0, 0) is false.
inline bool is_odd_multiple(const BigInt& a, const BigInt& b) {
  if (b == 0) return false;
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
  BigInt q = a / b;
  return mpz_odd_p(q.get_mpz_t()) != 0;
}

inline BigInt big_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

/// Floor division for signed exponent bookkeeping.
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long floor_mod(long long a, long long b) { return a - floor_div(a, b) * b; }

}  // namespace matring

#endif  // MATRING_EXACT_ARITH_HPP

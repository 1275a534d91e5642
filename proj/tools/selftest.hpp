#ifndef MATRING_TOOLS_SELFTEST_HPP
#define MATRING_TOOLS_SELFTEST_HPP

// Property suites behind `matring selftest`. Bounds come from a JSON config;
// every key is optional and falls back to the defaults below.

#include "matring/fib_polys.hpp"
#include "matring/free_algebra.hpp"
#include "matring/groebner.hpp"
#include "matring/matrix_model.hpp"
#include "matring/membership.hpp"
#include "matring/oracle.hpp"
#include "matring/poly.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace matring::cli {

struct SelftestConfig {
  std::vector<std::uint64_t> arith_primes{2, 3, 5, 7};
  std::vector<std::uint64_t> fp2_primes{3, 5, 7, 11, 13};
  std::size_t poly_samples = 200;
  std::size_t fib_max = 200;
  std::size_t trace_max = 100;
  std::size_t companion_max = 50;
  long structure_max_i = 8;
  std::vector<std::uint64_t> structure_primes{3, 5};
  std::size_t normal_form_samples = 10;
  std::size_t pi_samples = 100;
  long rewrite_max_i = 5;
  std::size_t rewrite_words = 1000;
  std::size_t rewrite_max_len = 12;
  std::size_t rewrite_exhaustive_len = 6;
  long n_max = 6;
  long q_max = 60;
  long q_witness_max = 20;
  long z2_max = 30;
  std::vector<std::uint64_t> zp_primes{3, 5, 7, 11, 13};
  long zp_max = 40;
  long corollary_p3_max = 96;
  std::vector<std::uint64_t> corollary_primes{7, 11, 31};
  long corollary_max = 60;
  long diagonal_max = 64;
  std::vector<std::uint64_t> group_lemma_primes{3, 5, 7, 11, 13};
  std::vector<std::uint64_t> frobenius_primes{3, 5, 7};
  std::vector<std::uint64_t> conjugation_primes{2, 3, 5};
  std::vector<std::uint64_t> cross_oracle_primes{3, 5, 7};
  long cross_oracle_max = 40;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SelftestConfig, arith_primes, fp2_primes, poly_samples, fib_max,
                                                trace_max, companion_max, structure_max_i, structure_primes,
                                                normal_form_samples, pi_samples, rewrite_max_i, rewrite_words,
                                                rewrite_max_len, rewrite_exhaustive_len, n_max, q_max, q_witness_max,
                                                z2_max, zp_primes, zp_max, corollary_p3_max, corollary_primes,
                                                corollary_max, diagonal_max, group_lemma_primes, frobenius_primes,
                                                conjugation_primes, cross_oracle_primes, cross_oracle_max, seed,
                                                threads)

struct SuiteResult {
  std::string module;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few only
  std::size_t failure_count = 0;
  double seconds = 0;
  bool passed() const { return failure_count == 0; }
};

namespace detail {

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}
  void expect(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failure_count;
    if (r_.failures.size() < 8) r_.failures.push_back(what());
  }

 private:
  SuiteResult& r_;
};

inline std::vector<std::pair<long, long>> coprime_pairs(long max_i, bool with_one_one) {
  std::vector<std::pair<long, long>> out;
  if (with_one_one) out.emplace_back(1, 1);
  for (long i = 2; i <= max_i; ++i) {
    for (long j = 1; j < i; ++j) {
      if (std::gcd(i, j) == 1) out.emplace_back(i, j);
    }
  }
  return out;
}

inline std::string pair_str(long long i, long long j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace detail

inline void suite_exact_arith(const SelftestConfig& cfg, detail::Tally& t) {
  for (std::uint64_t p : cfg.arith_primes) {
    const PrimeField F(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      const Fp x = F.from_int(static_cast<long long>(a));
      for (std::uint64_t b = 0; b < p; ++b) {
        const Fp y = F.from_int(static_cast<long long>(b));
        t.expect(x * y == y * x && x + y == y + x, [&] { return "F" + std::to_string(p) + " commutativity"; });
        if (!y.is_zero()) t.expect((x / y) * y == x, [&] { return "F" + std::to_string(p) + " division"; });
      }
    }
  }
  for (std::uint64_t p : cfg.fp2_primes) {
    const Fp2Field F(static_cast<std::uint32_t>(p));
    for (const Fp2& z : F.elements()) {
      t.expect(fp2_frobenius(fp2_frobenius(z)) == z && fp2_frobenius(z) == z.pow(p),
               [&] { return "F" + std::to_string(p) + "^2 Frobenius " + z.str(); });
      if (!z.is_zero()) t.expect(z * z.inverse() == F.one(), [&] { return "F" + std::to_string(p) + "^2 inverse"; });
    }
  }
  for (long long n = 1; n <= 4096; ++n) {
    const auto v = nu2(BigInt(static_cast<long>(n)));
    const long long pw = 1LL << v.value();
    t.expect(n % pw == 0 && (n / pw) % 2 == 1, [&] { return "nu2(" + std::to_string(n) + ")"; });
  }
}

inline void suite_poly(const SelftestConfig& cfg, detail::Tally& t) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  auto random_uni = [&](std::size_t n) {
    std::vector<Rational> c(n);
    for (auto& x : c) x = coeff(rng);
    return UniPoly<Rational>(c);
  };
  for (std::size_t k = 0; k < cfg.poly_samples; ++k) {
    const auto common = random_uni(3);
    const auto a = random_uni(6) * common;
    const auto b = random_uni(5) * common;
    const auto g = uni_gcd(a, b);
    t.expect(divides(g, a) && divides(g, b), [] { return "gcd divides both inputs"; });
    if (!common.is_zero()) t.expect(divides(common, g), [] { return "common factor divides gcd"; });
    if (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      t.expect(q * b + r == a && r.degree() < b.degree(), [] { return "division identity"; });
    }
  }
  std::uniform_int_distribution<std::uint32_t> ex(0, 4);
  for (std::size_t k = 0; k < cfg.poly_samples; ++k) {
    BiPoly<Rational> p, q;
    for (int m = 0; m < 5; ++m) {
      p.add_term({ex(rng), ex(rng)}, Rational(coeff(rng)));
      q.add_term({ex(rng), ex(rng)}, Rational(coeff(rng)));
    }
    t.expect(parse_bipoly(p.str(), RationalField{}) == p, [&] { return "text round trip " + p.str(); });
    for (int v : {-1, 0, 2}) {
      t.expect(evaluate_s(p * q, Rational(v)) == evaluate_s(p, Rational(v)) * evaluate_s(q, Rational(v)),
               [] { return "evaluate_s multiplicative"; });
    }
  }
}

inline void suite_fib_polys(const SelftestConfig& cfg, detail::Tally& t) {
  using UP = UniPoly<Rational>;
  const auto s = BiPoly<Rational>::s_var(1);
  for (std::size_t n = 1; n <= cfg.fib_max; ++n) {
    const auto f = f_st(n);
    const auto c0 = f.t_coefficient(0);
    const bool shape = f.degree_t() == static_cast<long>(n) - 1 &&
                       f.t_coefficient(static_cast<std::uint32_t>(n - 1)) == BiPoly<Rational>::constant(1) &&
                       (n % 2 == 0 ? c0.is_zero() : c0 == s.pow(static_cast<long>((n - 1) / 2)));
    t.expect(shape, [&] { return "f(" + std::to_string(n) + ") monic, degree, constant term"; });
    const UP a = fbar(n), am1 = fbar(n - 1), ap1 = fbar(n + 1), one = UP::constant(1);
    t.expect(fbar(2 * n - 1) == (a + am1) * (a - am1) && fbar(2 * n) - one == (ap1 - a) * (a + am1) &&
                 fbar(2 * n) + one == (ap1 + a) * (a - am1),
             [&] { return "fbar factorisations n=" + std::to_string(n); });
  }
  const UP z2p1(std::vector<Rational>{1, 0, 1}, 'z');
  for (std::size_t n = 0; n <= cfg.trace_max; ++n) {
    const auto fn = trace_poly(n);
    const auto& coeffs = fn.coefficients();
    UP lhs({}, 'z');
    UP power = UP::constant(1, 'z');
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) lhs += coeffs[k] * (power * UP::monomial(1, n - k, 'z'));
      power *= z2p1;
    }
    t.expect(lhs == UP::monomial(1, 2 * n, 'z') + UP::constant(1, 'z'),
             [&] { return "z^n f_n(z + 1/z) = z^2n + 1, n=" + std::to_string(n); });
    t.expect(trace_poly(2 * n) + UP::constant(2, 'x') == trace_poly(n) * trace_poly(n),
             [&] { return "f_2n + 2 = f_n^2, n=" + std::to_string(n); });
  }
  const auto C = companion_matrix();
  auto acc = C;
  for (std::size_t n = 1; n <= cfg.companion_max; ++n) {
    t.expect(companion_power(n) == acc, [&] { return "companion closed form n=" + std::to_string(n); });
    acc = acc * C;
  }
  t.expect(f_st(7).str() == "t^6 + 5*s*t^4 + 6*s^2*t^2 + s^3", [] { return "f(7) printed form"; });
}

template <class Field>
void structure_checks(const Field& field, const SelftestConfig& cfg, std::mt19937_64& rng, detail::Tally& t) {
  using K = typename Field::element_type;
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::uint32_t> ex(0, 6);
  for (auto [i, j] : detail::coprime_pairs(cfg.structure_max_i, true)) {
    const std::string tag = field.name() + " " + detail::pair_str(i, j);
    auto ring = structure_ring(i, j, field);
    const auto& gb = ring.basis();
    t.expect(!is_trivial(*gb), [&] { return tag + " quotient trivial"; });
    auto qb = quotient_basis(*gb);
    if (i > j) {
      t.expect(qb && 4 * static_cast<long>(qb->size()) <= 2 * (i + j - 1) * (i - j),
               [&] { return tag + " dimension bound"; });
    }
    for (std::size_t k = 0; k < cfg.normal_form_samples; ++k) {
      BiPoly<K> p, q;
      for (int m = 0; m < 4; ++m) {
        p.add_term({ex(rng), ex(rng)}, field.from_int(coeff(rng)));
        q.add_term({ex(rng), ex(rng)}, field.from_int(coeff(rng)));
      }
      t.expect(normal_form(p * q, gb) == normal_form(p, gb) * normal_form(q, gb),
               [&] { return tag + " normal form multiplicative"; });
    }
    const auto w = witness_XY(ring, i, j);
    const auto one = ring.one();
    const auto id = Mat2<QuotientElem<K>>::identity(one);
    t.expect(mat_pow(w.X(), static_cast<std::uint64_t>(j), one) * w.Y() +
                     w.Y() * mat_pow(w.X(), static_cast<std::uint64_t>(i), one) ==
                 id,
             [&] { return tag + " swapped relation"; });
  }
}

inline void suite_groebner_and_model(const SelftestConfig& cfg, detail::Tally& t) {
  std::mt19937_64 rng(cfg.seed);
  structure_checks(RationalField{}, cfg, rng, t);
  for (std::uint64_t p : cfg.structure_primes) structure_checks(PrimeField(p), cfg, rng, t);
  for (auto [i, j] : detail::coprime_pairs(cfg.structure_max_i, false)) {
    auto ideal = build_ideal_I(i, j, RationalField{});
    if ((i + j) % 2 == 0) {
      for (const auto& g : ideal.generators) {
        auto img = evaluate_s(g, Rational(1));
        t.expect(img.is_zero() || divides(UniPoly<Rational>::monomial(1, 1), img),
                 [&] { return detail::pair_str(i, j) + " s -> 1 lands in (t)"; });
      }
    } else {
      auto a = evaluate_s(ideal.generators[0], Rational(-1));
      auto b = evaluate_s(ideal.generators[1], Rational(-1));
      t.expect(uni_gcd(a, b).degree() >= 1, [&] { return detail::pair_str(i, j) + " s -> -1 common factor"; });
    }
  }
  const auto pq = pi_identity_check(RationalField{}, cfg.pi_samples, cfg.seed);
  t.expect(pq.ok(), [] { return "Hall / S4 identities over Q"; });
  for (std::uint64_t p : cfg.structure_primes) {
    t.expect(pi_identity_check(PrimeField(p), cfg.pi_samples, cfg.seed).ok(),
             [&] { return "Hall / S4 identities over F" + std::to_string(p); });
  }
}

inline void suite_free_algebra(const SelftestConfig& cfg, detail::Tally& t) {
  for (auto [i, j] : detail::coprime_pairs(cfg.rewrite_max_i, true)) {
    const std::string tag = detail::pair_str(i, j);
    const MatrixModel<RationalField> model(i, j);
    const auto rs = build_rewrite_system(i, j, RationalField{});
    const auto corpus = (i == 1 && j == 1) ? all_words(cfg.rewrite_exhaustive_len)
                                           : random_words(cfg.rewrite_words, cfg.rewrite_max_len, cfg.seed + i * 31 + j);
    const auto rep = validate_system(rs, model, corpus, cfg.seed);
    t.expect(rep.sound(), [&] { return tag + " rewriting unsound on " + std::to_string(rep.soundness_failures) + " words"; });
    t.expect(rep.divergences == 0, [&] { return tag + " strategies diverge"; });
    const auto ids = check_identities(model, cfg.n_max);
    for (const auto& c : ids.checks) t.expect(c.holds, [&] { return tag + " " + c.name; });
    if (i > j) {
      const auto fr = faithfulness_check(rs, model);
      t.expect(fr.injective(), [&] { return tag + " candidate basis images collide"; });
    }
  }
}

inline void suite_membership(const SelftestConfig& cfg, detail::Tally& t) {
  for (long i = 1; i <= cfg.q_max; ++i) {
    for (long j = 1; j <= cfg.q_max; ++j) {
      const bool v = decide_Q(i, j).verdict();
      t.expect(v == decide_Q_semantic(i, j).verdict(), [&] { return "Q semantic " + detail::pair_str(i, j); });
      t.expect(v == decide_Q(j, i).verdict(), [&] { return "Q symmetry " + detail::pair_str(i, j); });
    }
  }
  t.expect(!decide_Q(4, 3).verdict(), [] { return "decide_Q(4,3)"; });
  for (long i = 1; i <= cfg.corollary_p3_max; ++i) {
    for (long j = 1; j <= cfg.corollary_p3_max; ++j) {
      t.expect(decide_Zp(3, i, j).verdict() == decide_p3_list(i, j).verdict(),
               [&] { return "p=3 list " + detail::pair_str(i, j); });
    }
  }
  for (std::uint64_t p : cfg.corollary_primes) {
    for (long i = 1; i <= cfg.corollary_max; ++i) {
      for (long j = 1; j <= cfg.corollary_max; ++j) {
        t.expect(decide_Zp(p, i, j).verdict() == decide_p3mod4_family(p, i, j).verdict(),
                 [&] { return "p=" + std::to_string(p) + " family " + detail::pair_str(i, j); });
      }
    }
    for (long i = 1; i <= cfg.diagonal_max; ++i) {
      t.expect(decide_Zp(p, i, i).verdict() == decide_ii_Zp(p, i).verdict(),
               [&] { return "p=" + std::to_string(p) + " diagonal " + std::to_string(i); });
    }
  }
}

inline void suite_oracle(const SelftestConfig& cfg, detail::Tally& t) {
  const long z2 = cfg.z2_max;
  const auto t2 = oracle_enum_fp_table(2, z2, cfg.threads);
  for (long i = 1; i <= z2; ++i) {
    for (long j = 1; j <= z2; ++j) {
      t.expect(decide_Z2(i, j).verdict() == t2[(i - 1) * z2 + (j - 1)].has_value(),
               [&] { return "Z2 vs enumeration " + detail::pair_str(i, j); });
    }
  }
  for (std::uint64_t p : cfg.zp_primes) {
    const long n = cfg.zp_max;
    const auto table = oracle_enum_fp_table(p, n, cfg.threads);
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        t.expect(decide_Zp(p, i, j).verdict() == table[(i - 1) * n + (j - 1)].has_value(),
                 [&] { return "Z" + std::to_string(p) + " vs enumeration " + detail::pair_str(i, j); });
      }
    }
  }
  for (std::uint64_t p : cfg.cross_oracle_primes) {
    const long n = cfg.cross_oracle_max;
    const auto table = oracle_enum_fp_table(p, n, cfg.threads);
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        t.expect(oracle_roots_fp2(p, i, j).found() == table[(i - 1) * n + (j - 1)].has_value(),
                 [&] { return "roots vs enumeration p=" + std::to_string(p) + " " + detail::pair_str(i, j); });
      }
    }
  }
  for (long i = 1; i <= cfg.q_witness_max; ++i) {
    for (long j = 1; j <= cfg.q_witness_max; ++j) {
      if (!decide_Q(i, j).verdict()) continue;
      const auto r = construct_witness_Q(i, j);
      t.expect(r.found() && r.verified(), [&] { return "Q witness " + detail::pair_str(i, j); });
    }
  }
  for (std::uint64_t p : cfg.group_lemma_primes) {
    t.expect(check_group_lemma(p).ok(), [&] { return "cyclic group lemma p=" + std::to_string(p); });
  }
  for (std::uint64_t p : cfg.frobenius_primes) {
    t.expect(check_frobenius_lemma(p).ok(), [&] { return "Frobenius trace lemma p=" + std::to_string(p); });
  }
  for (std::uint64_t p : cfg.conjugation_primes) {
    t.expect(check_square_zero_conjugation(p).ok(), [&] { return "square-zero conjugation p=" + std::to_string(p); });
  }
}

/// Runs every suite in a fixed order.
inline std::vector<SuiteResult> run_selftest(const SelftestConfig& cfg) {
  using Suite = void (*)(const SelftestConfig&, detail::Tally&);
  const std::vector<std::pair<std::string, Suite>> suites{
      {"exact_arith", suite_exact_arith},         {"poly", suite_poly},
      {"fib_polys", suite_fib_polys},             {"groebner+matrix_model", suite_groebner_and_model},
      {"free_algebra", suite_free_algebra},       {"membership", suite_membership},
      {"oracle", suite_oracle},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : suites) {
    SuiteResult r;
    r.module = name;
    detail::Tally tally(r);
    const auto start = std::chrono::steady_clock::now();
    fn(cfg, tally);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace matring::cli

#endif  // MATRING_TOOLS_SELFTEST_HPP

// Acceptance criteria 1-9: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Bounds and time limits are fixed here and must not be relaxed.

#include "matring/fib_polys.hpp"
#include "matring/free_algebra.hpp"
#include "matring/groebner.hpp"
#include "matring/matrix_model.hpp"
#include "matring/membership.hpp"
#include "matring/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

using namespace matring;

namespace {

// Wall-clock limits in seconds, for the criteria that state one.
constexpr double kLimitGolden = 1.0;
constexpr double kLimitZp = 120.0;
constexpr double kLimitZ2 = 1.0;
constexpr double kLimitStructure = 30.0;
constexpr double kLimitIdentities = 10.0;

// Sweep bounds.
constexpr long kZpSmallMax = 40;   // p in {3, 5, 7}
constexpr long kZpLargeMax = 24;   // p in {11, 13}
constexpr long kZ2Max = 30;
constexpr long kP3ListMax = 96;
constexpr long kFamilyMax = 60;    // p in {7, 11, 31}
constexpr long kDiagonalMax = 64;
constexpr long kQMax = 60;
constexpr long kQWitnessMax = 20;
constexpr long kStructureMaxI = 8;
constexpr std::size_t kFactorMax = 200;
constexpr std::size_t kTraceMax = 100;
constexpr std::size_t kCompanionMax = 50;
constexpr long kCrossOracleMax = 40;
constexpr long kRewriteMaxI = 5;
constexpr std::size_t kExhaustiveLen = 6;
constexpr std::size_t kRandomWords = 1000;
constexpr std::size_t kRandomMaxLen = 12;
constexpr long kIdentityNMax = 6;

class Criterion {
 public:
  explicit Criterion(std::string label) : label_(std::move(label)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  std::size_t failures() const { return failures_; }
  std::size_t checks() const { return checks_; }
  const std::string& label() const { return label_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  std::string label_;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

std::string pair_str(long long i, long long j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::vector<std::pair<long, long>> coprime_pairs_below(long max_i) {
  std::vector<std::pair<long, long>> out;
  for (long i = 2; i <= max_i; ++i) {
    for (long j = 1; j < i; ++j) {
      if (std::gcd(i, j) == 1) out.emplace_back(i, j);
    }
  }
  return out;
}

bool table_has(const std::vector<std::optional<std::uint64_t>>& table, long n, long i, long j) {
  return table[static_cast<std::size_t>((i - 1) * n + (j - 1))].has_value();
}

// ---------------------------------------------------------------------------

void golden_structure(Criterion& c) {
  const RationalField Q;
  const auto gb21 = buchberger(build_ideal_I(2, 1, Q));
  const auto qb21 = quotient_basis(gb21);
  c.expect(gb21.str_list() == std::vector<std::string>{"t - 1", "s + 1"}, "(2,1) basis");
  c.expect(qb21 && qb21->size() == 1, "(2,1) dimension");
  const auto gb43 = buchberger(build_ideal_I(4, 3, Q));
  const auto qb43 = quotient_basis(gb43);
  c.expect(gb43.str_list() == std::vector<std::string>{"t^3 - t^2 - 2*t + 1", "s + 1"}, "(4,3) basis");
  c.expect(qb43 && qb43->size() == 3, "(4,3) dimension");
}

void zp_sweep(Criterion& c) {
  const std::vector<std::pair<std::uint64_t, long>> runs{{3, kZpSmallMax}, {5, kZpSmallMax}, {7, kZpSmallMax},
                                                         {11, kZpLargeMax}, {13, kZpLargeMax}};
  for (auto [p, n] : runs) {
    const auto table = oracle_enum_fp_table(p, n);
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        c.expect(decide_Zp(p, i, j).verdict() == table_has(table, n, i, j),
                 "p=" + std::to_string(p) + " " + pair_str(i, j));
      }
    }
  }
}

void z2_sweep(Criterion& c) {
  const auto table = oracle_enum_fp_table(2, kZ2Max);
  for (long i = 1; i <= kZ2Max; ++i) {
    for (long j = 1; j <= kZ2Max; ++j) c.expect(decide_Z2(i, j).verdict() == table_has(table, kZ2Max, i, j), pair_str(i, j));
  }
}

void corollaries(Criterion& c) {
  for (long i = 1; i <= kP3ListMax; ++i) {
    for (long j = 1; j <= kP3ListMax; ++j) {
      c.expect(decide_Zp(3, i, j).verdict() == decide_p3_list(i, j).verdict(), "p=3 list " + pair_str(i, j));
    }
  }
  for (std::uint64_t p : {7u, 11u, 31u}) {
    for (long i = 1; i <= kFamilyMax; ++i) {
      for (long j = 1; j <= kFamilyMax; ++j) {
        c.expect(decide_Zp(p, i, j).verdict() == decide_p3mod4_family(p, i, j).verdict(),
                 "p=" + std::to_string(p) + " family " + pair_str(i, j));
      }
    }
  }
  for (std::uint64_t p : {3u, 7u, 11u, 31u}) {
    for (long i = 1; i <= kDiagonalMax; ++i) {
      c.expect(decide_Zp(p, i, i).verdict() == decide_ii_Zp(p, i).verdict(),
               "p=" + std::to_string(p) + " diagonal " + std::to_string(i));
    }
  }
}

void rational_criterion(Criterion& c) {
  for (long i = 1; i <= kQMax; ++i) {
    for (long j = 1; j <= kQMax; ++j) {
      c.expect(decide_Q(i, j).verdict() == decide_Q_semantic(i, j).verdict(), "semantic " + pair_str(i, j));
    }
  }
  c.expect(!decide_Q(4, 3).verdict(), "decide_Q(4,3)");
  for (long i = 1; i <= kQWitnessMax; ++i) {
    for (long j = 1; j <= kQWitnessMax; ++j) {
      if (!decide_Q(i, j).verdict()) continue;
      const auto r = construct_witness_Q(i, j);
      c.expect(r.found() && r.verified() &&
                   satisfies_relations(r.x(), r.y(), static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                                       Rational(1)) &&
                   !r.y().is_zero(),
               "witness " + pair_str(i, j));
    }
  }
}

template <class Field>
void structure_suite_over(const Field& field, Criterion& c) {
  using Q = QuotientElem<typename Field::element_type>;
  auto pairs = coprime_pairs_below(kStructureMaxI);
  pairs.insert(pairs.begin(), {1, 1});
  for (auto [i, j] : pairs) {
    const std::string tag = field.name() + " " + pair_str(i, j);
    const auto ring = structure_ring(i, j, field);
    const auto w = witness_XY(ring, i, j);
    const Q one = ring.one();
    const Q zero = ring.zero();
    const auto I = Mat2<Q>::identity(one);
    const auto& X = w.X();
    const auto& Y = w.Y();
    const auto Xi = mat_pow(X, static_cast<std::uint64_t>(i), one);
    const auto Xj = mat_pow(X, static_cast<std::uint64_t>(j), one);
    c.expect(Xi * Y + Y * Xj == I, tag + " defining relation");
    c.expect((Y * Y).is_zero(), tag + " y^2 = 0");
    c.expect(Xj * Y + Y * Xi == I, tag + " swapped relation");
    if (i > j) {
      const Q sign = (i + j) % 2 == 0 ? one : -one;
      c.expect(mat_pow(X, static_cast<std::uint64_t>(i * i - j * j), one) == Mat2<Q>::scalar(sign, zero),
               tag + " x^(i^2-j^2)");
    }
    c.expect(mat_pow(X, static_cast<std::uint64_t>(i + j), one) == Mat2<Q>::scalar(ring.s(), zero), tag + " x^(i+j) -> s");
    c.expect(Xj - Xi == Mat2<Q>::scalar(ring.t(), zero), tag + " x^j - x^i -> t");
    // e11 = y x^j, e12 = y, e21 = x^i y x^j, e22 = x^i y.
    const Mat2<Q> e[2][2] = {{Y * Xj, Y}, {Xi * Y * Xj, Xi * Y}};
    std::size_t unit_checks = 1;
    c.expect(e[0][0] + e[1][1] == I, tag + " e11 + e22 = 1");
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int p = 0; p < 2; ++p) {
          for (int q = 0; q < 2; ++q) {
            const Mat2<Q> expected = b == p ? e[a][q] : Mat2<Q>::zero_matrix(zero);
            c.expect(e[a][b] * e[p][q] == expected, tag + " matrix unit product");
            ++unit_checks;
          }
        }
      }
    }
    c.expect(unit_checks == 17, tag + " matrix-unit relation count");
    c.expect(!is_trivial(*ring.basis()), tag + " quotient nontrivial");
    if (i > j) {
      const auto qb = quotient_basis(*ring.basis());
      c.expect(qb && 4 * static_cast<long>(qb->size()) <= 2 * (i + j - 1) * (i - j), tag + " dimension bound");
    }
  }
}

void structure_suite(Criterion& c) {
  structure_suite_over(RationalField{}, c);
  structure_suite_over(PrimeField(3), c);
}

void identity_suites(Criterion& c) {
  using UP = UniPoly<Rational>;
  const auto s = BiPoly<Rational>::s_var(1);
  const UP one = UP::constant(1);
  for (std::size_t n = 1; n <= kFactorMax; ++n) {
    const auto f = f_st(n);
    const auto c0 = f.t_coefficient(0);
    c.expect(f.degree_t() == static_cast<long>(n) - 1 &&
                 f.t_coefficient(static_cast<std::uint32_t>(n - 1)) == BiPoly<Rational>::constant(1),
             "f(n) monic of degree n-1, n=" + std::to_string(n));
    c.expect(n % 2 == 0 ? c0.is_zero() : c0 == s.pow(static_cast<long>((n - 1) / 2)),
             "f(n) constant term, n=" + std::to_string(n));
    const UP a = fbar(n), am1 = fbar(n - 1), ap1 = fbar(n + 1);
    c.expect(fbar(2 * n - 1) == (a + am1) * (a - am1), "fbar(2n-1), n=" + std::to_string(n));
    c.expect(fbar(2 * n) - one == (ap1 - a) * (a + am1), "fbar(2n)-1, n=" + std::to_string(n));
    c.expect(fbar(2 * n) + one == (ap1 + a) * (a - am1), "fbar(2n)+1, n=" + std::to_string(n));
  }
  const UP z2p1(std::vector<Rational>{1, 0, 1}, 'z');
  for (std::size_t n = 0; n <= kTraceMax; ++n) {
    const UP fn = trace_poly(n);
    const auto& coeffs = fn.coefficients();
    UP lhs({}, 'z');
    UP power = UP::constant(1, 'z');  // (z^2 + 1)^k
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) lhs += coeffs[k] * (power * UP::monomial(1, n - k, 'z'));
      power *= z2p1;
    }
    c.expect(lhs == UP::monomial(1, 2 * n, 'z') + UP::constant(1, 'z'), "z^n f_n(z + 1/z), n=" + std::to_string(n));
    c.expect(trace_poly(2 * n) + UP::constant(2, 'x') == fn * fn, "f_2n + 2 = f_n^2, n=" + std::to_string(n));
  }
  const auto C = companion_matrix();
  auto acc = C;
  for (std::size_t n = 1; n <= kCompanionMax; ++n) {
    c.expect(companion_power(n) == acc, "companion closed form, n=" + std::to_string(n));
    acc = acc * C;
  }
  c.expect(f_st(7).str() == "t^6 + 5*s*t^4 + 6*s^2*t^2 + s^3", "f(7) text");
}

void lemma_suites(Criterion& c) {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    c.expect(check_group_lemma(p).ok(), "cyclic group lemma p=" + std::to_string(p));
  }
  for (std::uint64_t p : {3u, 5u, 7u}) {
    const auto r = check_frobenius_lemma(p);
    c.expect(r.ok() && r.cases == p * (p * p - 1), "Frobenius trace lemma p=" + std::to_string(p));
  }
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const auto r = check_square_zero_conjugation(p);
    c.expect(r.ok() && r.cases == p * p - 1, "square-zero conjugation p=" + std::to_string(p));
  }
  for (std::uint64_t p : {3u, 5u, 7u}) {
    const auto table = oracle_enum_fp_table(p, kCrossOracleMax);
    for (long i = 1; i <= kCrossOracleMax; ++i) {
      for (long j = 1; j <= kCrossOracleMax; ++j) {
        c.expect(oracle_roots_fp2(p, i, j).found() == table_has(table, kCrossOracleMax, i, j),
                 "roots vs enumeration p=" + std::to_string(p) + " " + pair_str(i, j));
      }
    }
  }
}

void rewriting(Criterion& c) {
  auto pairs = coprime_pairs_below(kRewriteMaxI);
  pairs.insert(pairs.begin(), {1, 1});
  for (auto [i, j] : pairs) {
    const std::string tag = pair_str(i, j);
    const MatrixModel<RationalField> model(i, j);
    const auto rs = build_rewrite_system(i, j, RationalField{});
    const bool exhaustive = i == 1 && j == 1;
    const auto corpus =
        exhaustive ? all_words(kExhaustiveLen) : random_words(kRandomWords, kRandomMaxLen, 1000 + 37 * i + j);
    if (!exhaustive) c.expect(corpus.size() >= kRandomWords, tag + " corpus size");
    const auto rep = validate_system(rs, model, corpus);
    c.expect(rep.words == corpus.size(), tag + " every word validated");
    c.expect(rep.soundness_failures == 0, tag + " soundness failures: " + std::to_string(rep.soundness_failures));
    const auto ids = check_identities(model, kIdentityNMax);
    c.expect(ids.all_hold(), tag + " check_identities: " + std::to_string(ids.failures()) + " failing");
  }
}

struct Entry {
  int number;
  std::string title;
  std::function<void(Criterion&)> body;
  std::optional<double> limit;
};

}  // namespace

int main() {
  const std::vector<Entry> entries{
      {1, "golden structure fixtures", golden_structure, kLimitGolden},
      {2, "Z_p closed form vs enumeration oracle", zp_sweep, kLimitZp},
      {3, "Z_2 closed form vs enumeration oracle", z2_sweep, kLimitZ2},
      {4, "corollary and diagonal consistency", corollaries, std::nullopt},
      {5, "rational criterion, two derivations and witnesses", rational_criterion, std::nullopt},
      {6, "structure verification suite over Q and Z_3", structure_suite, kLimitStructure},
      {7, "polynomial identity suites", identity_suites, kLimitIdentities},
      {8, "finite field lemma suites and cross-oracle agreement", lemma_suites, std::nullopt},
      {9, "rewriting soundness and identities", rewriting, std::nullopt},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c(e.title);
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = !e.limit || secs < *e.limit;
    const bool pass = error.empty() && c.failures() == 0 && c.checks() > 0 && in_time;
    std::printf("%s criterion %d: %s (%zu checks, %zu failures, %.2f s", pass ? "PASS" : "FAIL", e.number,
                e.title.c_str(), c.checks(), c.failures(), secs);
    if (e.limit) std::printf(", limit %.0f s", *e.limit);
    std::printf(")");
    if (!error.empty()) std::printf(" exception: %s", error.c_str());
    if (!c.first_failure().empty()) std::printf(" first failure: %s", c.first_failure().c_str());
    if (!in_time) std::printf(" over time limit");
    std::printf("\n");
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

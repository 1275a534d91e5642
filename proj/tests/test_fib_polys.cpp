#include "matring/fib_polys.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace matring;

namespace {
const RationalField Q;
using UP = UniPoly<Rational>;
}  // namespace

TEST(FSt, PrintedValues) {
  EXPECT_TRUE(f_st(0).is_zero());
  EXPECT_EQ(f_st(1).str(), "1");
  EXPECT_EQ(f_st(6).str(), "t^5 + 4*s*t^3 + 3*s^2*t");
  EXPECT_EQ(f_st(7).str(), "t^6 + 5*s*t^4 + 6*s^2*t^2 + s^3");
  EXPECT_EQ(f_st(3).str(), "t^2 + s");
}

TEST(FSt, MonicDegreeAndConstantTerm) {
  const auto s = BiPoly<Rational>::s_var(1);
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto f = f_st(n);
    ASSERT_EQ(f.degree_t(), static_cast<long>(n) - 1) << n;
    ASSERT_TRUE(f.t_coefficient(static_cast<std::uint32_t>(n - 1)) == BiPoly<Rational>::constant(1)) << n;
    const auto c0 = f.t_coefficient(0);
    if (n % 2 == 0) {
      ASSERT_TRUE(c0.is_zero()) << n;
    } else {
      ASSERT_EQ(c0, s.pow(static_cast<long>((n - 1) / 2))) << n;
    }
  }
}

TEST(FSt, OverPrimeFieldMatchesReduction) {
  PrimeField F3(3);
  EXPECT_EQ(f_st(7, F3).str(), "t^6 + 2*s*t^4 + s^3");
}

TEST(Fbar, Values) {
  EXPECT_EQ(fbar(2).str(), "t");
  EXPECT_EQ(fbar(3).str(), "t^2 - 1");
  EXPECT_EQ(fbar(7).str(), "t^6 - 5*t^4 + 6*t^2 - 1");
  for (std::size_t n = 0; n < 30; ++n) EXPECT_EQ(fbar(n), evaluate_s(f_st(n), Rational(-1)));
}

TEST(Fbar, FactorisationIdentities) {
  const UP one = UP::constant(1);
  for (std::size_t n = 1; n <= 200; ++n) {
    const UP a = fbar(n), am1 = fbar(n - 1), ap1 = fbar(n + 1);
    ASSERT_EQ(fbar(2 * n - 1), (a + am1) * (a - am1)) << n;
    ASSERT_EQ(fbar(2 * n) - one, (ap1 - a) * (a + am1)) << n;
    ASSERT_EQ(fbar(2 * n) + one, (ap1 + a) * (a - am1)) << n;
  }
}

TEST(TracePoly, Values) {
  EXPECT_EQ(trace_poly(0).str(), "2");
  EXPECT_EQ(trace_poly(1).str(), "x");
  EXPECT_EQ(trace_poly(2).str(), "x^2 - 2");
  EXPECT_EQ(trace_poly(3).str(), "x^3 - 3*x");
}

TEST(TracePoly, LaurentIdentityClearedOfDenominators) {
  // z^n * f_n(z + 1/z) = z^(2n) + 1, expanded with z^n (z + 1/z)^k = z^(n-k) (z^2 + 1)^k.
  const UP z2p1 = UP(std::vector<Rational>{1, 0, 1}, 'z');
  for (std::size_t n = 0; n <= 100; ++n) {
    const auto f = trace_poly(n);
    const auto& coeffs = f.coefficients();
    UP lhs({}, 'z');
    UP power = UP::constant(1, 'z');  // (z^2 + 1)^k
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) lhs += coeffs[k] * (power * UP::monomial(1, n - k, 'z'));
      power *= z2p1;
    }
    UP rhs = UP::monomial(1, 2 * n, 'z') + UP::constant(1, 'z');
    ASSERT_EQ(lhs, rhs) << n;
  }
}

TEST(TracePoly, DoublingIdentity) {
  const UP two = UP::constant(2, 'x');
  for (std::size_t n = 0; n <= 100; ++n) {
    ASSERT_EQ(trace_poly(2 * n) + two, trace_poly(n) * trace_poly(n)) << n;
  }
}

TEST(CompanionPower, SmallCases) {
  auto c1 = companion_power(1);
  EXPECT_EQ(c1, companion_matrix());
  auto c2 = companion_power(2);
  EXPECT_EQ(c2.a.str(), "t^2 + s");
  EXPECT_EQ(c2.b.str(), "s*t");
  EXPECT_EQ(c2.c.str(), "t");
  EXPECT_EQ(c2.d.str(), "s");
  EXPECT_THROW(companion_power(0), std::invalid_argument);
}

TEST(CompanionPower, ClosedFormMatchesIteration) {
  const auto C = companion_matrix();
  auto acc = C;
  for (std::size_t n = 1; n <= 50; ++n) {
    ASSERT_EQ(companion_power(n), acc) << n;
    acc = acc * C;
  }
  EXPECT_EQ(mat_pow(C, 7, BiPoly<Rational>::constant(1)).c, f_st(7));
}

TEST(CompanionPower, Multiplicative) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<std::size_t> d(1, 50);
  for (int k = 0; k < 20; ++k) {
    std::size_t m = d(rng), n = d(rng);
    ASSERT_EQ(companion_power(m + n), companion_power(m) * companion_power(n));
  }
}

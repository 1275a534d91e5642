#include "matring/oracle.hpp"

#include <gtest/gtest.h>

using namespace matring;

namespace {

std::string detail_of(const WitnessReport<Rational>& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace

TEST(EnumFp, Examples) {
  const PrimeField F2(2), F3(3);
  auto r = oracle_enum_fp(2, 2, 1);
  ASSERT_TRUE(r.found());
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.y(), unit_e12(F2));
  // The classical witness x = (0 1; 1 1) also works.
  EXPECT_TRUE(satisfies_relations(Mat2<Fp>{F2.zero(), F2.one(), F2.one(), F2.one()}, unit_e12(F2), 2, 1, F2.one()));

  EXPECT_TRUE(oracle_enum_fp(3, 1, 1).found());
  EXPECT_TRUE(satisfies_relations(Mat2<Fp>{F3.zero(), F3.one(), F3.one(), F3.zero()}, unit_e12(F3), 1, 1, F3.one()));
  EXPECT_FALSE(oracle_enum_fp(3, 4, 4).found());
}

TEST(EnumFp, ThreadedMatchesSingleThreaded) {
  for (auto [i, j] : std::vector<std::pair<long long, long long>>{{1, 2}, {2, 4}, {3, 7}, {6, 6}, {4, 4}}) {
    auto a = oracle_enum_fp(5, i, j, 1);
    auto b = oracle_enum_fp(5, i, j, 4);
    ASSERT_EQ(a.found(), b.found());
    if (a.found()) {
      EXPECT_EQ(a.x(), b.x());
    }
  }
}

TEST(EnumFp, TableMatchesSingleQueries) {
  const PrimeField F(3);
  const long long n = 10;
  auto table = oracle_enum_fp_table(3, n, 3);
  for (long long i = 1; i <= n; ++i) {
    for (long long j = 1; j <= n; ++j) {
      auto single = oracle_enum_fp(3, i, j);
      const auto& cell = table[(i - 1) * n + (j - 1)];
      ASSERT_EQ(single.found(), cell.has_value()) << i << "," << j;
      if (cell) {
        EXPECT_EQ(matrix_from_code(*cell, F), single.x());
      }
    }
  }
}

TEST(EnumFp, PowerCycleMatchesSquareAndMultiply) {
  const PrimeField F(5);
  for (std::uint64_t code = 0; code < 625; code += 7) {
    const auto x = matrix_from_code(code, F);
    EXPECT_EQ(code_of(x, 5), code);
    PowerCycle cyc(x, F);
    EXPECT_LE(cyc.period(), 24u);
    for (std::uint64_t e : {0ULL, 1ULL, 5ULL, 23ULL, 24ULL, 1000ULL, 123457ULL}) ASSERT_EQ(cyc.power(e), mat_pow(x, e, F.one()));
  }
}

TEST(EnumFp, FullScanAgreesWithReduction) {
  for (std::uint64_t p : {2u, 3u}) {
    for (long long i = 1; i <= 8; ++i) {
      for (long long j = 1; j <= 8; ++j) {
        auto full = oracle_enum_fp_full(p, i, j);
        EXPECT_EQ(full.found(), oracle_enum_fp(p, i, j).found());
      }
    }
  }
  EXPECT_THROW(oracle_enum_fp_full(5, 1, 1), UnsupportedParameters);
}

TEST(RootsFp2, Examples) {
  auto r22 = oracle_roots_fp2(3, 2, 2);
  ASSERT_TRUE(r22.found());
  EXPECT_TRUE(r22.verified());
  EXPECT_TRUE(oracle_roots_fp2(3, 1, 2).found());
  EXPECT_EQ(oracle_roots_fp2(5, 2, 4).found(), oracle_enum_fp(5, 2, 4).found());
  EXPECT_THROW(oracle_roots_fp2(2, 1, 1), UnsupportedParameters);
}

TEST(RootsFp2, AgreesWithEnumeration) {
  for (std::uint64_t p : {3u, 5u}) {
    const long long n = 16;
    auto table = oracle_enum_fp_table(p, n);
    for (long long i = 1; i <= n; ++i) {
      for (long long j = 1; j <= n; ++j) {
        ASSERT_EQ(oracle_roots_fp2(p, i, j).found(), table[(i - 1) * n + (j - 1)].has_value()) << p << ": " << i << "," << j;
      }
    }
  }
}

TEST(ConstructQ, Examples) {
  auto r35 = construct_witness_Q(3, 5);
  ASSERT_TRUE(r35.found());
  EXPECT_EQ(r35.x(), (Mat2<Rational>{0, 1, 1, 0}));
  EXPECT_EQ(r35.y(), (Mat2<Rational>{0, 1, 0, 0}));

  auto r22 = construct_witness_Q(2, 2);
  ASSERT_TRUE(r22.found());
  EXPECT_EQ(detail_of(r22, "charpoly"), "x^2 - 2*x + 2");
  EXPECT_EQ(r22.x().trace(), Rational(2));
  EXPECT_EQ(r22.x().det(), Rational(2));

  auto r12 = construct_witness_Q(1, 2);
  ASSERT_TRUE(r12.found());
  EXPECT_EQ(r12.x().trace(), Rational(1));
  EXPECT_EQ(r12.x().det(), Rational(1));

  EXPECT_FALSE(construct_witness_Q(4, 3).found());
}

TEST(ConstructQ, EveryMemberUpToTwelve) {
  for (long long i = 1; i <= 12; ++i) {
    for (long long j = 1; j <= 12; ++j) {
      auto r = construct_witness_Q(i, j);
      EXPECT_EQ(r.found(), decide_Q(i, j).verdict()) << i << "," << j;
    }
  }
}

TEST(WitnessReport, RejectsBadWitness) {
  const PrimeField F(3);
  EXPECT_THROW(WitnessReport<Fp>::with_witness(WitnessMethod::ENUM_FP, "F3", 1, 1, Mat2<Fp>::identity(F.one()), unit_e12(F), F.one()),
               InconsistencyError);
}

TEST(Lemmas, GroupMinusOne) {
  for (std::uint64_t p : {3u, 5u, 7u}) {
    auto rep = check_group_lemma(p);
    EXPECT_TRUE(rep.ok()) << p << " mismatches " << rep.mismatches;
  }
}

TEST(Lemmas, FrobeniusTrace) {
  for (std::uint64_t p : {3u, 5u, 7u}) {
    auto rep = check_frobenius_lemma(p);
    EXPECT_TRUE(rep.ok()) << p;
    EXPECT_EQ(rep.cases, p * (p * p - 1));
  }
}

TEST(Lemmas, SquareZeroConjugation) {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto rep = check_square_zero_conjugation(p);
    EXPECT_TRUE(rep.ok()) << p;
    EXPECT_EQ(rep.cases, p * p - 1);
  }
}

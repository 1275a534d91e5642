#include "matring/membership.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

using namespace matring;

namespace {

using M = std::array<long, 4>;  // row-major 2x2 over Z/p

M mul(const M& a, const M& b, long p) {
  return {(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p, (a[2] * b[0] + a[3] * b[2]) % p,
          (a[2] * b[1] + a[3] * b[3]) % p};
}

// Pairs (i, j) <= n with a representation over F_p. Nonzero square-zero y is
// conjugate to E12, which turns the relation into conditions on x^i, x^j.
std::set<std::pair<long, long>> brute_force_members(long p, long n) {
  std::set<std::pair<long, long>> out;
  for (long code = 0; code < p * p * p * p; ++code) {
    M x{code / (p * p * p), (code / (p * p)) % p, (code / p) % p, code % p};
    std::vector<M> pw{M{1, 0, 0, 1}};
    for (long k = 0; k < n; ++k) pw.push_back(mul(pw.back(), x, p));
    for (long i = 1; i <= n; ++i) {
      if (pw[i][2] != 1) continue;
      for (long j = 1; j <= n; ++j) {
        if (pw[j][2] == 1 && (pw[i][0] + pw[j][3]) % p == 0) out.emplace(i, j);
      }
    }
  }
  return out;
}

}  // namespace

TEST(DecideQ, Examples) {
  EXPECT_FALSE(decide_Q(4, 3).verdict());
  EXPECT_TRUE(decide_Q(5, 7).verdict());
  EXPECT_EQ(decide_Q(5, 7).fired_rule(), RuleTag::ODD_ODD);
  EXPECT_FALSE(decide_Q(4, 4).verdict());
  EXPECT_TRUE(decide_Q(2, 2).verdict());
  EXPECT_EQ(decide_Q(2, 2).fired_rule(), RuleTag::DIAG_MOD4);
  EXPECT_EQ(decide_Q(4, 5).fired_rule(), RuleTag::MOD6_LIST);
  EXPECT_EQ(decide_Q(4, 3).fired_rule(), RuleTag::NONE);
  EXPECT_THROW(decide_Q(0, 3), UnsupportedParameters);
}

TEST(DecideQ, PeriodicInResiduesMod12) {
  std::map<std::tuple<long, long, bool, long>, bool> seen;
  for (long i = 1; i <= 120; ++i) {
    for (long j = 1; j <= 120; ++j) {
      const auto key = std::make_tuple(i % 12, j % 12, i == j, i == j ? i % 4 : -1L);
      const bool v = decide_Q(i, j).verdict();
      auto [it, fresh] = seen.emplace(key, v);
      ASSERT_EQ(it->second, v) << i << "," << j;
    }
  }
}

TEST(DecideQSemantic, Examples) {
  auto t22 = decide_Q_semantic(2, 2);
  EXPECT_TRUE(t22.verdict());
  auto t12 = decide_Q_semantic(1, 2);
  EXPECT_TRUE(t12.verdict());
  EXPECT_EQ(t12.fired_rule(), RuleTag::MOD6_LIST);
  EXPECT_TRUE(std::any_of(t12.notes().begin(), t12.notes().end(),
                          [](const std::string& n) { return n.find("r^3 = -1") != std::string::npos; }));
  EXPECT_TRUE(decide_Q_semantic(1, 5).verdict());
  EXPECT_FALSE(decide_Q_semantic(3, 6).verdict());  // c = 1 root but 3 | i
  EXPECT_FALSE(decide_Q_semantic(2, 4).verdict());  // c = 0 root, r^2 = -1
}

TEST(DecideQSemantic, AgreesWithCongruences) {
  for (long i = 1; i <= 60; ++i) {
    for (long j = 1; j <= 60; ++j) {
      ASSERT_EQ(decide_Q(i, j).verdict(), decide_Q_semantic(i, j).verdict()) << i << "," << j;
    }
  }
}

TEST(DecideZ2, ExamplesAndBruteForce) {
  EXPECT_TRUE(decide_Z2(2, 1).verdict());
  EXPECT_TRUE(decide_Z2(3, 3).verdict());
  // (2,4) = (2,1) mod 3; x = [[0,1],[1,1]] has x^4 = x and is a witness.
  EXPECT_TRUE(decide_Z2(2, 4).verdict());
  EXPECT_FALSE(decide_Z2(2, 2).verdict());
  const auto members = brute_force_members(2, 24);
  for (long i = 1; i <= 24; ++i) {
    for (long j = 1; j <= 24; ++j) EXPECT_EQ(decide_Z2(i, j).verdict(), members.count({i, j}) == 1) << i << "," << j;
  }
}

TEST(DecideZp, Examples) {
  EXPECT_TRUE(decide_Zp(3, 2, 2).verdict());
  EXPECT_FALSE(decide_Zp(3, 4, 4).verdict());
  EXPECT_TRUE(decide_Zp(3, 1, 2).verdict());
  EXPECT_THROW(decide_Zp(2, 1, 1), UnsupportedParameters);
  EXPECT_THROW(decide_Zp(9, 1, 1), UnsupportedParameters);
  auto tr = decide_Zp(5, 1, 2);
  std::map<std::string, std::string> aux(tr.aux().begin(), tr.aux().end());
  EXPECT_EQ(aux.at("d"), "1");
  EXPECT_EQ(aux.at("e"), "1");
  EXPECT_EQ(aux.at("nu2(p-1)"), "2");
}

TEST(DecideZp, AgreesWithBruteForce) {
  for (long p : {3L, 5L, 7L}) {
    const long n = 24;
    const auto members = brute_force_members(p, n);
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        EXPECT_EQ(decide_Zp(p, i, j).verdict(), members.count({i, j}) == 1) << "p=" << p << " " << i << "," << j;
      }
    }
  }
}

TEST(DecideIIZp, ExamplesAndAgreement) {
  EXPECT_TRUE(decide_ii_Zp(3, 2).verdict());
  EXPECT_FALSE(decide_ii_Zp(3, 4).verdict());
  EXPECT_FALSE(decide_ii_Zp(7, 8).verdict());
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (long i = 1; i <= 64; ++i) ASSERT_EQ(decide_Zp(p, i, i).verdict(), decide_ii_Zp(p, i).verdict()) << p << " " << i;
  }
}

TEST(Corollaries, PThreeList) {
  EXPECT_TRUE(decide_corollaries(3, 1, 1).verdict());
  EXPECT_TRUE(decide_corollaries(3, 4, 5).verdict());
  EXPECT_EQ(decide_corollaries(3, 10, 10).fired_rule(), RuleTag::DIAG_MOD8);
  for (long i = 1; i <= 96; ++i) {
    for (long j = 1; j <= 96; ++j) ASSERT_EQ(decide_Zp(3, i, j).verdict(), decide_corollaries(3, i, j).verdict()) << i << "," << j;
  }
}

TEST(Corollaries, PrimesThreeModFour) {
  EXPECT_TRUE(decide_corollaries(7, 3, 5).verdict());
  EXPECT_EQ(decide_corollaries(7, 3, 5).fired_rule(), RuleTag::ODD_ODD);
  for (std::uint64_t p : {7u, 11u, 31u}) {
    for (long i = 1; i <= 60; ++i) {
      for (long j = 1; j <= 60; ++j) {
        ASSERT_EQ(decide_Zp(p, i, j).verdict(), decide_p3mod4_family(p, i, j).verdict()) << p << ": " << i << "," << j;
      }
    }
  }
  EXPECT_THROW(decide_corollaries(5, 1, 1), UnsupportedParameters);
  EXPECT_THROW(decide_corollaries(13, 1, 1), UnsupportedParameters);
}

TEST(AllDeciders, SymmetricAndOddPairsAlwaysMembers) {
  for (long i = 1; i <= 40; ++i) {
    for (long j = 1; j <= 40; ++j) {
      std::vector<std::pair<DecisionTrace, DecisionTrace>> traces;
      traces.emplace_back(decide_Q(i, j), decide_Q(j, i));
      traces.emplace_back(decide_Q_semantic(i, j), decide_Q_semantic(j, i));
      traces.emplace_back(decide_Z2(i, j), decide_Z2(j, i));
      for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) traces.emplace_back(decide_Zp(p, i, j), decide_Zp(p, j, i));
      traces.emplace_back(decide_corollaries(3, i, j), decide_corollaries(3, j, i));
      traces.emplace_back(decide_corollaries(7, i, j), decide_corollaries(7, j, i));
      for (const auto& [a, b] : traces) {
        ASSERT_EQ(a.verdict(), b.verdict()) << a.field() << " " << i << "," << j;
        ASSERT_EQ(a.verdict(), a.fired_rule() != RuleTag::NONE);
        if (i % 2 == 1 && j % 2 == 1) {
          ASSERT_TRUE(a.verdict()) << a.field() << " " << i << "," << j;
        }
      }
    }
  }
}

#include "matring/groebner.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace matring;

namespace {

const RationalField Q;

template <class Field>
std::shared_ptr<const GroebnerBasis<typename Field::element_type>> gb_of(long i, long j, const Field& field) {
  return std::make_shared<const GroebnerBasis<typename Field::element_type>>(buchberger(build_ideal_I(i, j, field)));
}

std::vector<std::pair<long, long>> coprime_pairs(long max_i) {
  std::vector<std::pair<long, long>> out;
  for (long i = 2; i <= max_i; ++i) {
    for (long j = 1; j < i; ++j) {
      if (std::gcd(i, j) == 1) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

TEST(BuildIdeal, Generators) {
  auto i21 = build_ideal_I(2, 1, Q);
  ASSERT_EQ(i21.generators.size(), 3u);
  EXPECT_EQ(i21.generators[0].str(), "t^2 + s");
  EXPECT_EQ(i21.generators[1].str(), "t - 1");
  EXPECT_EQ(i21.generators[2].str(), "s + 1");

  auto i43 = build_ideal_I(4, 3, Q);
  EXPECT_EQ(i43.generators[0], f_st(7));
  EXPECT_EQ(i43.generators[1].str(), "t^5 + 4*s*t^3 + 3*s^2*t - s^2");
  EXPECT_EQ(i43.generators[2].str(), "s + 1");

  auto i11 = build_ideal_I(1, 1, Q);
  ASSERT_EQ(i11.generators.size(), 1u);
  EXPECT_EQ(i11.generators[0].str(), "t");
}

TEST(BuildIdeal, SwapsAndRejects) {
  auto a = build_ideal_I(3, 4, Q);
  EXPECT_EQ(a.generators, build_ideal_I(4, 3, Q).generators);
  EXPECT_EQ(*a.params, std::make_pair(4L, 3L));
  EXPECT_THROW(build_ideal_I(4, 2, Q), UnsupportedParameters);
  EXPECT_THROW(build_ideal_I(3, 3, Q), UnsupportedParameters);
}

TEST(Buchberger, GoldenBases) {
  EXPECT_EQ(buchberger(build_ideal_I(2, 1, Q)).str_list(), (std::vector<std::string>{"t - 1", "s + 1"}));
  EXPECT_EQ(buchberger(build_ideal_I(4, 3, Q)).str_list(), (std::vector<std::string>{"t^3 - t^2 - 2*t + 1", "s + 1"}));
  EXPECT_EQ(buchberger(build_ideal_I(1, 1, Q)).str_list(), (std::vector<std::string>{"t"}));
  EXPECT_EQ(buchberger(std::vector{BiPoly<Rational>::constant(1)}).str_list(), (std::vector<std::string>{"1"}));
}

TEST(Buchberger, ReducedBasisProperties) {
  for (auto [i, j] : coprime_pairs(9)) {
    auto gb = buchberger(build_ideal_I(i, j, Q));
    const auto& lms = gb.leading_monomials();
    for (std::size_t a = 0; a < gb.size(); ++a) {
      EXPECT_TRUE(gb.basis()[a].leading_coeff().is_one());
      for (std::size_t b = 0; b < gb.size(); ++b) {
        if (a != b) {
          EXPECT_FALSE(lms[a].divides(lms[b]));
        }
        if (a < b) {
          // S-polynomials reduce to zero.
          const auto l = Monomial::lcm(lms[a], lms[b]);
          auto sp = gb.basis()[a].times_term(lms[a].quotient_of(l), Rational(1)) -
                    gb.basis()[b].times_term(lms[b].quotient_of(l), Rational(1));
          EXPECT_TRUE(gb.reduce(sp).is_zero()) << i << "," << j;
        }
      }
    }
  }
}

TEST(Buchberger, SoundnessByCofactors) {
  for (auto [i, j] : coprime_pairs(7)) {
    auto ideal = build_ideal_I(i, j, Q);
    CofactorTranscript<Rational> tr;
    auto gb = buchberger(ideal, &tr);
    ASSERT_EQ(tr.cofactors.size(), gb.size());
    for (std::size_t k = 0; k < gb.size(); ++k) {
      BiPoly<Rational> combo;
      for (std::size_t g = 0; g < tr.generators.size(); ++g) combo += tr.cofactors[k][g] * tr.generators[g];
      EXPECT_EQ(combo, gb.basis()[k]) << i << "," << j << " element " << k;
    }
  }
}

TEST(Buchberger, TrivialIdealDetected) {
  const auto s = BiPoly<Rational>::s_var(1);
  auto gb = buchberger(std::vector{s, s + BiPoly<Rational>::constant(1)});
  EXPECT_TRUE(is_trivial(gb));
  EXPECT_FALSE(is_trivial(buchberger(build_ideal_I(2, 1, Q))));
  EXPECT_FALSE(is_trivial(buchberger(build_ideal_I(4, 3, Q))));
}

TEST(Buchberger, NontrivialAcrossFields) {
  for (auto [i, j] : coprime_pairs(10)) {
    EXPECT_FALSE(is_trivial(buchberger(build_ideal_I(i, j, Q)))) << i << "," << j;
    EXPECT_FALSE(is_trivial(buchberger(build_ideal_I(i, j, PrimeField(3))))) << i << "," << j;
    EXPECT_FALSE(is_trivial(buchberger(build_ideal_I(i, j, PrimeField(5))))) << i << "," << j;
  }
}

TEST(NormalForm, Examples) {
  auto g21 = gb_of(2, 1, Q);
  auto g43 = gb_of(4, 3, Q);
  EXPECT_TRUE(normal_form(parse_bipoly("t - 1", Q), g21).is_zero());
  EXPECT_EQ(normal_form(parse_bipoly("s", Q), g21).str(), "-1");
  EXPECT_EQ(normal_form(parse_bipoly("t^3", Q), g43).str(), "t^2 + 2*t - 1");
}

TEST(NormalForm, MultiplicationWellDefined) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::uint32_t> ex(0, 6);
  for (auto [i, j] : coprime_pairs(6)) {
    auto gb = gb_of(i, j, Q);
    for (int k = 0; k < 20; ++k) {
      BiPoly<Rational> p, q;
      for (int m = 0; m < 4; ++m) {
        p.add_term({ex(rng), ex(rng)}, Rational(coeff(rng)));
        q.add_term({ex(rng), ex(rng)}, Rational(coeff(rng)));
      }
      auto lhs = normal_form(p * q, gb);
      auto rhs = normal_form(p, gb) * normal_form(q, gb);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(QuotientBasis, Dimensions) {
  auto q21 = quotient_basis(*gb_of(2, 1, Q));
  ASSERT_TRUE(q21);
  EXPECT_EQ(q21->size(), 1u);
  auto q43 = quotient_basis(*gb_of(4, 3, Q));
  ASSERT_TRUE(q43);
  ASSERT_EQ(q43->size(), 3u);
  EXPECT_EQ((*q43)[0], (Monomial{0, 0}));
  EXPECT_EQ((*q43)[1], (Monomial{0, 1}));
  EXPECT_EQ((*q43)[2], (Monomial{0, 2}));
  EXPECT_FALSE(quotient_basis(*gb_of(1, 1, Q)));
}

TEST(QuotientBasis, SpanningBoundHolds) {
  for (auto [i, j] : coprime_pairs(10)) {
    auto qb = quotient_basis(*gb_of(i, j, Q));
    ASSERT_TRUE(qb) << i << "," << j;
    EXPECT_LE(4 * static_cast<long>(qb->size()), 2 * (i + j - 1) * (i - j)) << i << "," << j;
  }
}

TEST(Nontriviality, EvaluationArguments) {
  for (auto [i, j] : coprime_pairs(10)) {
    auto ideal = build_ideal_I(i, j, Q);
    if ((i + j) % 2 == 0) {
      // s -> 1 sends every generator into (t).
      for (const auto& g : ideal.generators) {
        auto img = evaluate_s(g, Rational(1));
        EXPECT_TRUE(img.is_zero() || divides(UniPoly<Rational>::monomial(1, 1), img)) << i << "," << j;
      }
    } else {
      auto a = evaluate_s(ideal.generators[0], Rational(-1));
      auto b = evaluate_s(ideal.generators[1], Rational(-1));
      EXPECT_TRUE(a.leading().is_one());
      EXPECT_TRUE(b.leading().is_one());
      EXPECT_GE(uni_gcd(a, b).degree(), 1) << i << "," << j;
    }
  }
}

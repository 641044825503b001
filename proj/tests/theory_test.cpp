#include "halving/theory.hpp"

#include <gtest/gtest.h>

#include "halving/error.hpp"
#include "halving/schedule.hpp"

namespace halving {
namespace {

TEST(Conditions, Examples) {
  const ConditionReport big = check_conditions(32, 5000, 20);
  EXPECT_TRUE(big.c1_holds);
  EXPECT_TRUE(big.c2_holds);
  EXPECT_TRUE(big.equivalence_guaranteed);

  const ConditionReport thin = check_conditions(1024, 4, 100);
  EXPECT_FALSE(thin.c1_holds);  // needs B >= 2560
  EXPECT_TRUE(thin.c2_holds);
  EXPECT_FALSE(thin.equivalence_guaranteed);
  EXPECT_TRUE(check_conditions(1024, 4, 2560).c1_holds);
  EXPECT_FALSE(check_conditions(1024, 4, 2559).c1_holds);

  const ConditionReport tiny = check_conditions(2, 2, 4);
  EXPECT_TRUE(tiny.c1_holds && tiny.c2_holds);
  EXPECT_FALSE(check_conditions(2, 2, 3).c2_holds);
}

TEST(Conditions, ExactAtPowerOfTwoBoundaries) {
  for (std::size_t k = 1; k < 20; ++k) {
    const std::size_t n = std::size_t{1} << k;
    EXPECT_TRUE(check_conditions(n, n, 4 * k).equivalence_guaranteed);
    EXPECT_FALSE(check_conditions(n, n, 4 * k - 1).c2_holds);
    EXPECT_TRUE(check_conditions(n, n, k).c1_holds);
    EXPECT_FALSE(check_conditions(n, n - 1, k).c1_holds);
    EXPECT_TRUE(check_conditions(n + 1, n + 1, 4 * (k + 1)).c2_holds);
    EXPECT_FALSE(check_conditions(n + 1, n + 1, 4 * k + 3).c2_holds);
  }
}

TEST(Lemma1, SmallAndMediumValues) {
  EXPECT_TRUE(check_lemma1(2).holds);
  EXPECT_TRUE(check_lemma1(32).holds);
  EXPECT_FALSE(check_lemma1(32).witness_x.has_value());
  EXPECT_THROW(check_lemma1(1), Error);
}

// The cleared-denominator form is an independent
// route: (ceil(x/2) - 1) * floor(4b/x) >= b - 1.
TEST(Lemma1, AgreesWithClearedDenominatorForm) {
  for (std::uint64_t b = 2; b <= 600; ++b) {
    for (std::uint64_t x = 3; x <= 4 * b; ++x) {
      const std::uint64_t lhs = (x + 1) / 2 - 1;
      const std::uint64_t d = 4 * b / x;
      EXPECT_EQ(lemma_terms(b, x).holds(), lhs * d >= b - 1) << b << " " << x;
    }
  }
}

TEST(Lemma1, ExhaustiveTo4096) {
  for (std::size_t b = 2; b <= 4096; ++b) ASSERT_TRUE(check_lemma1(b).holds) << b;
}

TEST(Inequality4, EightArmConfigurationViolatesInLaterRound) {
  // (C2) fails (B = 8 < 12). Round 0 -> 1 is fine for every z, but with
  // J = [8, 16, 32] round 1 -> 2 fails at z = 17: 2 - ceil(7/32) = 1 < ceil(17/16) = 2.
  const Inequality4Check check = check_inequality4(8, 24, 8);
  EXPECT_FALSE(check.holds);
  ASSERT_TRUE(check.witness.has_value());
  EXPECT_EQ(check.witness->round, 1u);
  EXPECT_EQ(check.witness->z, 17u);
  EXPECT_EQ(check.witness->lhs, 1);
  EXPECT_EQ(check.witness->rhs, 2);
}

TEST(Inequality4, BatchOfTwoBoundary) {
  // b = 2 leaves only z = 1: RHS ceil(1/J_r) = 1 <= |S_{r+1}| - 1.
  for (std::size_t n = 2; n <= 200; ++n) {
    const std::size_t rounds = ceil_log2(n);
    EXPECT_TRUE(check_inequality4(n, 2, (n * rounds + 1) / 2 + 4 * rounds).holds) << n;
  }
}

TEST(Inequality4, PropagatesScheduleErrors) {
  EXPECT_THROW(check_inequality4(1024, 4, 100), Error);
}

TEST(Inequality4, HoldsWheneverEquivalenceGuaranteed) {
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 256; ++n) {
    for (std::size_t b = 2; b <= 64; ++b) {
      for (std::size_t B = 1; B <= 128; ++B) {
        if (!check_conditions(n, b, B).equivalence_guaranteed) continue;
        ++checked;
        const auto result = check_inequality4(n, b, B);
        ASSERT_TRUE(result.holds) << "n=" << n << " b=" << b << " B=" << B << " r="
                                  << result.witness->round << " z=" << result.witness->z;
      }
    }
  }
  EXPECT_GT(checked, 100000u);
}

TEST(Rational, Parse) {
  const Rational a = Rational::parse("3.9");
  EXPECT_EQ(a.num, 39u);
  EXPECT_EQ(a.den, 10u);
  const Rational b = Rational::parse("2.0");
  EXPECT_EQ(b.num, 2u);
  EXPECT_EQ(b.den, 1u);
  const Rational c = Rational::parse("14/4");
  EXPECT_EQ(c.num, 7u);
  EXPECT_EQ(c.den, 2u);
  EXPECT_THROW(Rational::parse("abc"), Error);
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("-1"), Error);
}

TEST(Tightness, RejectsAlphaAtOrAboveFour) {
  for (const char* text : {"4", "4.0", "8/2", "5", "0"}) {
    try {
      find_tightness_counterexample(Rational::parse(text), 1000);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AlphaOutOfRange);
    }
  }
}

// Expected (b, x) frozen from an independent enumeration with exact fractions.
TEST(Tightness, SmallestWitnesses) {
  struct Case {
    const char* alpha;
    std::size_t b;
    std::size_t x;
  };
  for (const Case& c : {Case{"1.0", 3, 3}, Case{"2.0", 3, 4}, Case{"3.0", 5, 4},
                        Case{"3.9", 41, 4}, Case{"3.5", 9, 4}}) {
    const Rational alpha = Rational::parse(c.alpha);
    const auto w = find_tightness_counterexample(alpha, 1000);
    ASSERT_TRUE(w.has_value()) << c.alpha;
    EXPECT_EQ(w->b, c.b) << c.alpha;
    EXPECT_EQ(w->x, c.x) << c.alpha;
    const LemmaTerms recheck = lemma_terms(w->b, w->x, alpha.num, alpha.den);
    EXPECT_GE(recheck.divisor, 1);
    EXPECT_LT(recheck.lhs, recheck.rhs);
  }
}

TEST(Tightness, NoneBelowSmallestWitness) {
  EXPECT_FALSE(find_tightness_counterexample(Rational::parse("3.9"), 40).has_value());
}

}  // namespace
}  // namespace halving

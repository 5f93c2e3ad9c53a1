#include "dirichlet/semigroup.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace dirichlet;

TEST(Ordinary, DivisorPairsOfSix) {
  const OrdinaryIndexSet set(8);
  const auto pairs = set.decompositions(6);
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{
      {1, 6}, {2, 3}, {3, 2}, {6, 1}};
  EXPECT_EQ(pairs, expected);
}

TEST(Ordinary, UnitDecomposesTrivially) {
  const OrdinaryIndexSet set(4);
  const auto pairs = set.decompositions(1);
  ASSERT_EQ(pairs.size(), 1u);
  const std::pair<std::int64_t, std::int64_t> unitPair{1, 1};
  EXPECT_EQ(pairs[0], unitPair);
}

TEST(Ordinary, PairCountMatchesDivisorSieve) {
  const std::int64_t n = 10000;
  const OrdinaryIndexSet set(n);
  const auto d = oracle::divisorCountSieve(n);
  for (std::int64_t k = 1; k <= n; ++k)
    ASSERT_EQ(set.decompositions(k).size(), static_cast<std::size_t>(d[k]))
        << "at n = " << k;
}

TEST(Ordinary, DecompositionSymmetry) {
  const OrdinaryIndexSet set(360);
  for (std::int64_t n : {1, 2, 12, 97, 360}) {
    const auto pairs = set.decompositions(n);
    for (const auto& [a, b] : pairs) {
      EXPECT_EQ(a * b, n);
      bool mirrored = false;
      for (const auto& [c, d2] : pairs)
        if (c == b && d2 == a) mirrored = true;
      EXPECT_TRUE(mirrored);
    }
  }
}

TEST(Ordinary, Validation) {
  EXPECT_THROW(OrdinaryIndexSet(0), Error);
  const OrdinaryIndexSet set(4);
  EXPECT_TRUE(set.contains(1));
  EXPECT_FALSE(set.contains(5));
  EXPECT_THROW(set.decompositions(5), Error);
}

TEST(Generated, TwoGeneratorEnumeration) {
  const GeneratedSemigroup set({Rational(1), Rational(3, 2)}, Rational(3));
  const std::vector<Rational> expected{Rational(0),    Rational(1),
                                       Rational(3, 2), Rational(2),
                                       Rational(5, 2), Rational(3)};
  EXPECT_EQ(set.elements(), expected);
}

TEST(Generated, SingleGeneratorLine) {
  const GeneratedSemigroup set({Rational(1)}, Rational(4));
  const std::vector<Rational> expected{Rational(0), Rational(1), Rational(2),
                                       Rational(3), Rational(4)};
  EXPECT_EQ(set.elements(), expected);
}

TEST(Generated, EqualValuesMergeOnce) {
  // 2 is reachable as 2*1 and as 1*2; it must be listed once.
  const GeneratedSemigroup set({Rational(1), Rational(2)}, Rational(3));
  const std::vector<Rational> expected{Rational(0), Rational(1), Rational(2),
                                       Rational(3)};
  EXPECT_EQ(set.elements(), expected);
}

TEST(Generated, ElementsStrictlyIncreasing) {
  const GeneratedSemigroup set({Rational(1, 2), Rational(1, 3)}, Rational(5));
  const auto& elems = set.elements();
  for (std::size_t i = 0; i + 1 < elems.size(); ++i)
    EXPECT_LT(elems[i], elems[i + 1]);
}

TEST(Generated, ClosedUnderAdditionWithinHorizon) {
  const GeneratedSemigroup set({Rational(1), Rational(3, 2)}, Rational(6));
  for (const auto& a : set.elements())
    for (const auto& b : set.elements()) {
      const Rational sum = a + b;
      if (sum <= set.horizon()) EXPECT_TRUE(set.contains(sum));
    }
}

TEST(Generated, DecompositionsMatchBruteForcePairScan) {
  const GeneratedSemigroup set({Rational(1), Rational(3, 2)}, Rational(3));
  // Independent scan over the element list.
  const auto scan = [&](const Rational& lambda) {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& a : set.elements())
      for (const auto& b : set.elements())
        if (a + b == lambda) pairs.emplace_back(a, b);
    return pairs;  // ascending in first component by construction
  };
  for (const auto& lambda : set.elements())
    EXPECT_EQ(set.decompositions(lambda), scan(lambda)) << "at " << lambda;

  const auto pairs = set.decompositions(Rational(5, 2));
  const std::vector<std::pair<Rational, Rational>> expected{
      {Rational(0), Rational(5, 2)},
      {Rational(1), Rational(3, 2)},
      {Rational(3, 2), Rational(1)},
      {Rational(5, 2), Rational(0)}};
  EXPECT_EQ(pairs, expected);
}

TEST(Generated, DecompositionSymmetry) {
  const GeneratedSemigroup set({Rational(1, 2), Rational(1, 3)}, Rational(4));
  for (const auto& lambda : set.elements()) {
    const auto& pairs = set.decompositions(lambda);
    for (const auto& [a, b] : pairs) {
      EXPECT_EQ(a + b, lambda);
      bool mirrored = false;
      for (const auto& [c, d] : pairs)
        if (c == b && d == a) mirrored = true;
      EXPECT_TRUE(mirrored);
    }
  }
}

TEST(Generated, ExplosionCap) {
  EXPECT_THROW(GeneratedSemigroup({Rational(1, 100)}, Rational(100), 500),
               ExplosionError);
}

TEST(Generated, Validation) {
  EXPECT_THROW(GeneratedSemigroup({Rational(0)}, Rational(1)), Error);
  EXPECT_THROW(GeneratedSemigroup({Rational(-1, 2)}, Rational(1)), Error);
  EXPECT_THROW(GeneratedSemigroup({Rational(1)}, Rational(0)), Error);
  const GeneratedSemigroup set({Rational(1)}, Rational(2));
  EXPECT_THROW(set.decompositions(Rational(7)), Error);
}

TEST(Generated, ZeroAlwaysPresent) {
  const GeneratedSemigroup set({Rational(7, 3)}, Rational(1));  // no room
  ASSERT_EQ(set.elements().size(), 1u);
  EXPECT_EQ(set.elements()[0], Rational(0));
}

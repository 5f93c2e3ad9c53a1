#include "dirichlet/series.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dirichlet/invert.hpp"
#include "test_support.hpp"

using namespace dirichlet;

namespace {

std::shared_ptr<const OrdinaryIndexSet> ord(std::int64_t n) {
  return std::make_shared<const OrdinaryIndexSet>(n);
}

std::shared_ptr<const GeneratedSemigroup> line(std::int64_t t) {
  return std::make_shared<const GeneratedSemigroup>(
      std::vector<Rational>{Rational(1)}, Rational(t));
}

}  // namespace

TEST(Delta, UnitCoefficientOnly) {
  const auto f = delta<OrdinaryIndexSet, Complex>(ord(8));
  EXPECT_EQ(f.supportSize(), 1u);
  EXPECT_EQ(f.at(1), Complex(1, 0));

  const auto q = delta<GeneratedSemigroup, Quaternion>(line(3));
  EXPECT_EQ(q.supportSize(), 1u);
  EXPECT_EQ(q.at(Rational(0)), Quaternion::one());
}

TEST(Delta, IsTheConvolutionIdentity) {
  std::mt19937_64 rng(71);
  const auto set = ord(12);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Bicomplex>(
        set, {}, rng);
    const auto unit = delta<OrdinaryIndexSet, Bicomplex>(set);
    EXPECT_EQ(maxCoefficientDistance(convolve(unit, f), f), 0.0);
    EXPECT_EQ(maxCoefficientDistance(convolve(f, unit), f), 0.0);
  }
}

TEST(Convolve, AllOnesCountsDivisors) {
  const auto set = ord(6);
  Series<OrdinaryIndexSet, Complex> f(set);
  for (std::int64_t n = 1; n <= 6; ++n) f.set(n, Complex(1, 0));
  const auto square = convolve(f, f);
  const auto d = oracle::divisorCountSieve(6);
  for (std::int64_t n = 1; n <= 6; ++n)
    EXPECT_NEAR(square.at(n).real(), d[n], 1e-12) << "n = " << n;
  EXPECT_NEAR(square.at(6).real(), 4.0, 1e-12);
}

TEST(Convolve, BinomialOnTheLine) {
  const auto set = line(2);
  Series<GeneratedSemigroup, Complex> f(set);
  f.set(Rational(0), Complex(1, 0));
  f.set(Rational(1), Complex(1, 0));
  const auto sq = convolve(f, f);
  EXPECT_EQ(sq.at(Rational(0)), Complex(1, 0));
  EXPECT_EQ(sq.at(Rational(1)), Complex(2, 0));
  EXPECT_EQ(sq.at(Rational(2)), Complex(1, 0));
}

TEST(Convolve, QuaternionCoefficientsDoNotCommute) {
  const auto set = line(2);
  Series<GeneratedSemigroup, Quaternion> f(set), g(set);
  f.set(Rational(0), Quaternion::one());
  f.set(Rational(1), Quaternion::e1());
  g.set(Rational(0), Quaternion::one());
  g.set(Rational(1), Quaternion::e2());
  const auto fg = convolve(f, g);
  const auto gf = convolve(g, f);
  // (f*g)_2 = e1 e2 = e3 while (g*f)_2 = e2 e1 = -e3.
  EXPECT_EQ(fg.at(Rational(2)), Quaternion::e3());
  EXPECT_EQ(gf.at(Rational(2)), -Quaternion::e3());
  EXPECT_GT(maxCoefficientDistance(fg, gf), 1.0);
}

template <class Set, class Coeff>
void convolveAgainstNaive(std::shared_ptr<const Set> set,
                          CoeffShape<Coeff> shape, unsigned seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 30; ++i) {
    const auto f =
        oracle::randomInvertibleSeries<Set, Coeff>(set, shape, rng, 10, 2.0);
    const auto g =
        oracle::randomInvertibleSeries<Set, Coeff>(set, shape, rng, 10, 2.0);
    EXPECT_LE(maxCoefficientDistance(convolve(f, g),
                                     oracle::naiveConvolve(f, g)),
              1e-12);
  }
}

TEST(Convolve, MatchesNaiveOracleEverywhere) {
  convolveAgainstNaive<OrdinaryIndexSet, Complex>(ord(20), {}, 81);
  convolveAgainstNaive<OrdinaryIndexSet, Bicomplex>(ord(20), {}, 82);
  convolveAgainstNaive<OrdinaryIndexSet, Quaternion>(ord(20), {}, 83);
  convolveAgainstNaive<OrdinaryIndexSet, Matrix<Complex>>(ord(16), {2}, 84);
  convolveAgainstNaive<OrdinaryIndexSet, Matrix<Bicomplex>>(ord(16), {2}, 85);
  convolveAgainstNaive<OrdinaryIndexSet, Matrix<Quaternion>>(ord(16), {2}, 86);
  const auto gen = std::make_shared<const GeneratedSemigroup>(
      std::vector<Rational>{Rational(1), Rational(3, 2)}, Rational(8));
  convolveAgainstNaive<GeneratedSemigroup, Complex>(gen, {}, 87);
  convolveAgainstNaive<GeneratedSemigroup, Matrix<Quaternion>>(gen, {2}, 88);
}

TEST(Convolve, MismatchedSeriesThrow) {
  Series<OrdinaryIndexSet, Complex> a(ord(4)), b(ord(8));
  EXPECT_THROW(convolve(a, b), DescriptorMismatch);
  Series<OrdinaryIndexSet, Matrix<Complex>> c(ord(4), {2}), d(ord(4), {3});
  EXPECT_THROW(convolve(c, d), DescriptorMismatch);
}

TEST(Evaluate, DeltaIsOneEverywhere) {
  const auto f = delta<OrdinaryIndexSet, Complex>(ord(8));
  for (const auto& s : {HalfPlanePoint(0, 0), HalfPlanePoint(2, -3),
                        HalfPlanePoint(50, 17)})
    EXPECT_EQ(evaluate(f, s), Complex(1, 0));
}

TEST(Evaluate, TwoTermZeroAndRealPoint) {
  const auto set = ord(2);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(1, 0));
  // 2^{-it} = -1 at t = pi / ln 2.
  const double t = M_PI / std::log(2.0);
  EXPECT_LE(std::abs(evaluate(f, HalfPlanePoint(0.0, t))), 1e-12);
  EXPECT_NEAR(evaluate(f, HalfPlanePoint(1.0, 0.0)).real(), 1.5, 1e-12);
}

TEST(Evaluate, TendsToUnitCoefficientDeepInThePlane) {
  // positive lambda gaps >= 0.5, checked at j = 50
  const auto set = std::make_shared<const GeneratedSemigroup>(
      std::vector<Rational>{Rational(1, 2)}, Rational(3));
  std::mt19937_64 rng(91);
  for (int i = 0; i < 20; ++i) {
    const auto f = oracle::randomInvertibleSeries<GeneratedSemigroup, Bicomplex>(
        set, {}, rng, 5, 3.0);
    const auto far = evaluate(f, HalfPlanePoint(50.0, 1.0));
    EXPECT_LE(coeffNorm(far - f.unitCoefficient()), 1e-10);
  }
}

TEST(EvaluationHomomorphism, CentralScalarDescriptors) {
  std::mt19937_64 rng(92);
  // supports up to 6 inside window 36: products never truncate
  const auto set = ord(36);
  const std::vector<HalfPlanePoint> points{
      HalfPlanePoint(0, 0), HalfPlanePoint(0.3, -2.0), HalfPlanePoint(2, 5)};
  for (int i = 0; i < 25; ++i) {
    const auto fc = oracle::randomBoundedSupport<Complex>(set, 6, {}, rng);
    const auto gc = oracle::randomBoundedSupport<Complex>(set, 6, {}, rng);
    const auto fb = oracle::randomBoundedSupport<Bicomplex>(set, 6, {}, rng);
    const auto gb = oracle::randomBoundedSupport<Bicomplex>(set, 6, {}, rng);
    const auto fm =
        oracle::randomBoundedSupport<Matrix<Bicomplex>>(set, 6, {2}, rng);
    const auto gm =
        oracle::randomBoundedSupport<Matrix<Bicomplex>>(set, 6, {2}, rng);
    for (const auto& s : points) {
      EXPECT_LE(std::abs(evaluate(convolve(fc, gc), s) -
                         evaluate(fc, s) * evaluate(gc, s)),
                1e-9);
      EXPECT_LE(coeffNorm(evaluate(convolve(fb, gb), s) -
                          evaluate(fb, s) * evaluate(gb, s)),
                1e-9);
      EXPECT_LE(coeffNorm(evaluate(convolve(fm, gm), s) -
                          evaluate(fm, s) * evaluate(gm, s)),
                1e-9);
    }
  }
}

TEST(EvaluationHomomorphism, QuaternionsAtRealPointsOnly) {
  std::mt19937_64 rng(93);
  const auto set = ord(36);
  for (int i = 0; i < 25; ++i) {
    const auto f = oracle::randomBoundedSupport<Quaternion>(set, 6, {}, rng);
    const auto g = oracle::randomBoundedSupport<Quaternion>(set, 6, {}, rng);
    for (const double j : {0.0, 0.7, 3.0}) {
      const HalfPlanePoint s(j, 0.0);
      EXPECT_LE(coeffNorm(evaluate(convolve(f, g), s) -
                          evaluate(f, s) * evaluate(g, s)),
                1e-9);
    }
  }
}

TEST(WeightedNorm, DeltaHasNormOne) {
  EXPECT_EQ(weightedNorm(delta<OrdinaryIndexSet, Complex>(ord(8)),
                         Weight::polynomial(2.0)),
            1.0);
  EXPECT_EQ(weightedNorm(delta<GeneratedSemigroup, Quaternion>(line(3)),
                         Weight::trivial()),
            1.0);
}

TEST(WeightedNorm, PolynomialWeightOnTwoTerms) {
  Series<GeneratedSemigroup, Complex> f(line(2));
  f.set(Rational(0), Complex(1, 0));
  f.set(Rational(1), Complex(1, 0));
  EXPECT_NEAR(weightedNorm(f, Weight::polynomial(2.0)), 5.0, 1e-12);
}

TEST(WeightedNorm, SubmultiplicativeUnderConvolution) {
  std::mt19937_64 rng(94);
  const auto set = ord(16);
  const auto w = Weight::polynomial(1.0);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Quaternion>(
        set, {}, rng, 8, 2.0);
    const auto g = oracle::randomInvertibleSeries<OrdinaryIndexSet, Quaternion>(
        set, {}, rng, 8, 2.0);
    EXPECT_LE(weightedNorm(convolve(f, g), w),
              weightedNorm(f, w) * weightedNorm(g, w) + 1e-9);
  }
}

TEST(WeightedNorm, DomainMismatchThrows) {
  const auto f = delta<OrdinaryIndexSet, Complex>(ord(4));
  EXPECT_THROW(weightedNorm(f, Weight::polynomial(1.0, WeightDomain::additive)),
               DescriptorMismatch);
}

TEST(Conjugate, FixedPointsAndKnownValues) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(0, 1));
  const auto fbar = conjugateCoefficients(f);
  EXPECT_EQ(fbar.at(1), Complex(1, 0));   // real coefficients unchanged
  EXPECT_EQ(fbar.at(2), Complex(0, -1));  // i -> -i
}

TEST(Conjugate, CommutesWithConvolution) {
  std::mt19937_64 rng(95);
  const auto set = ord(16);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Complex>(
        set, {}, rng, 8, 2.0);
    const auto g = oracle::randomInvertibleSeries<OrdinaryIndexSet, Complex>(
        set, {}, rng, 8, 2.0);
    EXPECT_LE(maxCoefficientDistance(
                  conjugateCoefficients(convolve(f, g)),
                  convolve(conjugateCoefficients(f), conjugateCoefficients(g))),
              1e-12);
  }
}

TEST(AddScale, VectorSpaceLaws) {
  std::mt19937_64 rng(96);
  const auto set = ord(12);
  const auto zero = Series<OrdinaryIndexSet, Bicomplex>(set);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Bicomplex>(
        set, {}, rng);
    const auto g = oracle::randomInvertibleSeries<OrdinaryIndexSet, Bicomplex>(
        set, {}, rng);
    EXPECT_EQ(maxCoefficientDistance(add(f, zero), f), 0.0);
    EXPECT_EQ(maxCoefficientDistance(scale(f, 1.0), f), 0.0);
    // linearity spot check: (f + g) * 2 = 2f + 2g
    EXPECT_LE(maxCoefficientDistance(scale(add(f, g), 2.0),
                                     add(scale(f, 2.0), scale(g, 2.0))),
              1e-12);
  }
}

TEST(Associativity, AllDescriptors) {
  std::mt19937_64 rng(97);
  const auto set = ord(12);
  const auto check = [&](auto shapeTag, auto coeffTag) {
    using Coeff = decltype(coeffTag);
    for (int i = 0; i < 20; ++i) {
      const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Coeff>(
          set, shapeTag, rng, 6, 2.0);
      const auto g = oracle::randomInvertibleSeries<OrdinaryIndexSet, Coeff>(
          set, shapeTag, rng, 6, 2.0);
      const auto h = oracle::randomInvertibleSeries<OrdinaryIndexSet, Coeff>(
          set, shapeTag, rng, 6, 2.0);
      EXPECT_LE(maxCoefficientDistance(convolve(convolve(f, g), h),
                                       convolve(f, convolve(g, h))),
                1e-10);
    }
  };
  check(CoeffShape<Complex>{}, Complex{});
  check(CoeffShape<Bicomplex>{}, Bicomplex{});
  check(CoeffShape<Quaternion>{}, Quaternion{});
  check(CoeffShape<Matrix<Complex>>{2}, Matrix<Complex>(2));
  check(CoeffShape<Matrix<Bicomplex>>{2}, Matrix<Bicomplex>(2));
  check(CoeffShape<Matrix<Quaternion>>{2}, Matrix<Quaternion>(2));
}

TEST(Commutativity, HoldsOverComplexAndBicomplex) {
  std::mt19937_64 rng(98);
  const auto set = ord(16);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Bicomplex>(
        set, {}, rng, 8, 2.0);
    const auto g = oracle::randomInvertibleSeries<OrdinaryIndexSet, Bicomplex>(
        set, {}, rng, 8, 2.0);
    EXPECT_LE(maxCoefficientDistance(convolve(f, g), convolve(g, f)), 1e-12);
  }
}

TEST(Truncation, OrdinaryWindowsAreConsistent) {
  std::mt19937_64 rng(99);
  const auto small = ord(16);
  const auto big = ord(48);
  for (int i = 0; i < 20; ++i) {
    // same coefficients installed in both windows
    const auto fBig = oracle::randomInvertibleSeries<OrdinaryIndexSet, Complex>(
        small, {}, rng, 8, 2.0);  // indices <= 16
    const auto gBig = oracle::randomInvertibleSeries<OrdinaryIndexSet, Complex>(
        small, {}, rng, 8, 2.0);
    Series<OrdinaryIndexSet, Complex> f2(big), g2(big);
    for (const auto& [idx, v] : fBig.coefficients()) f2.set(idx, v);
    for (const auto& [idx, v] : gBig.coefficients()) g2.set(idx, v);
    const auto prodSmall = convolve(fBig, gBig);
    const auto prodBig = convolve(f2, g2);
    for (std::int64_t n = 1; n <= 16; ++n)
      EXPECT_EQ(prodSmall.at(n), prodBig.at(n)) << "n = " << n;
  }
}

TEST(Series, RejectsIndicesOutsideWindow) {
  Series<OrdinaryIndexSet, Complex> f(ord(4));
  EXPECT_THROW(f.set(5, Complex(1, 0)), Error);
}

TEST(Series, ConvolutionIsBitIdenticalAcrossThreadCounts) {
  // windows past the parallel threshold; per-coefficient sums keep a fixed
  // order, so the worker count must not show in the output
  std::mt19937_64 rng(100);
  const auto set = ord(600);
  Series<OrdinaryIndexSet, Quaternion> f(set), g(set);
  std::uniform_int_distribution<std::int64_t> pick(1, 600);
  for (int k = 0; k < 60; ++k) {
    f.set(pick(rng), oracle::randomCoeff<Quaternion>(rng));
    g.set(pick(rng), oracle::randomCoeff<Quaternion>(rng));
  }
  setenv("DIRICHLET_THREADS", "1", 1);
  const auto serial = convolve(f, g);
  setenv("DIRICHLET_THREADS", "7", 1);
  const auto parallel = convolve(f, g);
  unsetenv("DIRICHLET_THREADS");
  ASSERT_EQ(serial.coefficients().size(), parallel.coefficients().size());
  EXPECT_EQ(maxCoefficientDistance(serial, parallel), 0.0);
  for (const auto& [idx, v] : serial.coefficients())
    ASSERT_EQ(v, parallel.at(idx));
}

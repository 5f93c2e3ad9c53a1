#include "dirichlet/margin.hpp"

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

}  // namespace

TEST(Indicator, ScalarCases) {
  EXPECT_EQ(indicator(Complex(0, 0)), 0.0);
  EXPECT_EQ(indicator(Complex(3, 4)), 5.0);
  EXPECT_EQ(indicator(Bicomplex::idempotent1()), 0.0);  // l2 component is 0
  EXPECT_EQ(indicator(Bicomplex::hyperbolicUnit()), 1.0);
  EXPECT_NEAR(indicator(Quaternion(1, 1, 1, 1)), 2.0, 1e-15);
}

TEST(Indicator, MatrixCases) {
  EXPECT_NEAR(indicator(2.0 * Matrix<Complex>::identity(3)), 2.0, 1e-10);
  EXPECT_NEAR(indicator(Matrix<Complex>(2)), 0.0, 1e-12);
  auto mb = Matrix<Bicomplex>::identity(2);
  mb(1, 1) = Bicomplex::idempotent1();
  EXPECT_NEAR(indicator(mb), 0.0, 1e-12);
  EXPECT_NEAR(indicator(Matrix<Quaternion>::identity(2)), 1.0, 1e-10);
}

TEST(HalfPlane, ConstantSeries) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(2, 0));
  const auto report = halfPlaneMargin(f, 2.0, 5.0, 21, 10);
  EXPECT_NEAR(report.minValue, 2.0, 1e-12);
}

TEST(HalfPlane, OneOneHasForcedZero) {
  const auto set = ord(2);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(1, 0));
  // tMax = 5 brackets only the principal zero pair t = +-pi/ln 2; the tie
  // order reports the positive one.
  const auto report = halfPlaneMargin(f, 10.0, 5.0);
  EXPECT_LE(report.minValue, 1e-2);
  ASSERT_TRUE(report.argminHalfPlane.has_value());
  const double tStar = M_PI / std::log(2.0);
  EXPECT_NEAR(report.argminHalfPlane->j, 0.0, 0.05);
  EXPECT_NEAR(report.argminHalfPlane->t, tStar, 0.05);
}

TEST(HalfPlane, DefaultBoxStillBracketsAZero) {
  Series<OrdinaryIndexSet, Complex> f(ord(2));
  f.set(1, Complex(1, 0));
  f.set(2, Complex(1, 0));
  const auto report = halfPlaneMargin(f);  // default tMax = 20
  EXPECT_LE(report.minValue, 1e-2);
  ASSERT_TRUE(report.argminHalfPlane.has_value());
  // some odd multiple of pi/ln 2
  const double phase = std::abs(report.argminHalfPlane->t) * std::log(2.0);
  const double nearestOdd = 2.0 * std::round((phase / M_PI - 1.0) / 2.0) + 1.0;
  EXPECT_NEAR(phase, nearestOdd * M_PI, 0.05);
}

TEST(HalfPlane, OneHalfReachesTheTriangleBound) {
  const auto set = ord(2);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(0.5, 0));
  const auto report = halfPlaneMargin(f);
  EXPECT_NEAR(report.minValue, 0.5, 1e-4);
}

TEST(HalfPlane, MonotoneInBudget) {
  const auto set = ord(6);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(0.4, 0.2));
  f.set(5, Complex(-0.3, 0.1));
  const auto coarse = halfPlaneMargin(f, 10, 20, 41, 0);
  const auto fine = halfPlaneMargin(f, 10, 20, 81, 0);
  const auto refined = halfPlaneMargin(f, 10, 20, 41, 40);
  EXPECT_LE(fine.minValue, coarse.minValue);
  EXPECT_LE(refined.minValue, coarse.minValue);
}

TEST(HalfPlane, AsymptoticPointCanWin) {
  // A single slow mode: the grid never sees the phase rotate, so every
  // finite sample stays above the j -> infinity value |a_0| = 1.
  const auto set = std::make_shared<const GeneratedSemigroup>(
      std::vector<Rational>{Rational(1, 100)}, Rational(1, 100));
  Series<GeneratedSemigroup, Complex> f(set);
  f.set(Rational(0), Complex(1, 0));
  f.set(Rational(1, 100), Complex(0.5, 0));
  const auto report = halfPlaneMargin(f);
  EXPECT_TRUE(report.asymptotic);
  EXPECT_FALSE(report.argminHalfPlane.has_value());
  EXPECT_NEAR(report.minValue, 1.0, 1e-12);
}

TEST(HalfPlane, ReportInternallyConsistent) {
  std::mt19937_64 rng(171);
  const auto set = ord(12);
  for (int i = 0; i < 10; ++i) {
    const auto f =
        oracle::randomInvertibleSeries<OrdinaryIndexSet, Matrix<Complex>>(
            set, {2}, rng);
    const auto report = halfPlaneMargin(f, 4, 8, 41, 20);
    ASSERT_TRUE(report.argminHalfPlane || report.asymptotic);
    const double recomputed =
        report.asymptotic
            ? indicator(f.unitCoefficient())
            : indicator(evaluate(f, *report.argminHalfPlane));
    EXPECT_LE(std::abs(report.minValue - recomputed), 1e-12);
    ASSERT_TRUE(report.detModulusAtArgmin.has_value());
  }
}

TEST(HalfPlane, GridPreconditionEnforced) {
  const auto f = delta<OrdinaryIndexSet, Complex>(ord(2));
  EXPECT_THROW(halfPlaneMargin(f, 10, 20, 1, 0), Error);
}

TEST(Polydisc, SinglePointSupport) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  const auto report = polydiscMargin(f);
  EXPECT_EQ(report.minValue, 1.0);
  EXPECT_TRUE(report.primes.empty());
}

TEST(Polydisc, GeometricTermsMinimizeAtRealCorner) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(-0.5, 0));
  const auto report = polydiscMargin(f);
  EXPECT_NEAR(report.minValue, 0.5, 1e-6);
  ASSERT_EQ(report.primes, (std::vector<std::int64_t>{2}));
  EXPECT_LE(std::abs(report.argminPolydisc[0] - Complex(1, 0)), 1e-9);
}

TEST(Polydisc, CornerForcedZero) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(-0.5, 0));
  f.set(3, Complex(-0.5, 0));
  const auto report = polydiscMargin(f);
  EXPECT_LE(report.minValue, 1e-6);  // z2 = z3 = 1; consistent with f(0) = 0
}

TEST(Polydisc, MonotoneInBudget) {
  const auto set = ord(12);
  Series<OrdinaryIndexSet, Complex> f(set);
  f.set(1, Complex(1, 0));
  f.set(2, Complex(0.3, 0.4));
  f.set(3, Complex(-0.2, 0.1));
  f.set(10, Complex(0.05, -0.2));
  const auto a = polydiscMargin(f, 256, 0);
  const auto b = polydiscMargin(f, 2048, 0);
  const auto c = polydiscMargin(f, 256, 50);
  EXPECT_LE(b.minValue, a.minValue);
  EXPECT_LE(c.minValue, a.minValue);
}

TEST(Polydisc, CoherentWithHalfPlaneAlongN_ToTheMinusS) {
  // chi(n) = n^{-s} corresponds to z_p = p^{-s}.
  const auto set = ord(12);
  std::mt19937_64 rng(181);
  for (int i = 0; i < 10; ++i) {
    const auto f = oracle::randomInvertibleSeries<OrdinaryIndexSet, Complex>(
        set, {}, rng);
    const auto primes = supportPrimes(f);
    for (const auto& s : {HalfPlanePoint(0.0, 1.3), HalfPlanePoint(1.0, -0.7),
                          HalfPlanePoint(2.5, 0.0)}) {
      std::vector<Complex> zs;
      zs.reserve(primes.size());
      for (const auto p : primes)
        zs.push_back(std::exp(-s.s() * std::log(static_cast<double>(p))));
      const double viaPolydisc = indicator(semicharacterValue(f, primes, zs));
      const double viaHalfPlane = indicator(evaluate(f, s));
      EXPECT_LE(std::abs(viaPolydisc - viaHalfPlane), 1e-10);
    }
  }
}

TEST(Polydisc, MatrixIndicatorUsesSigmaMin) {
  const auto set = ord(4);
  Series<OrdinaryIndexSet, Matrix<Complex>> f(set, {2});
  f.set(1, 2.0 * Matrix<Complex>::identity(2));
  const auto report = polydiscMargin(f);
  EXPECT_NEAR(report.minValue, 2.0, 1e-10);
  ASSERT_TRUE(report.detModulusAtArgmin.has_value());
  EXPECT_NEAR(*report.detModulusAtArgmin, 4.0, 1e-10);
}

TEST(Consistency, NeumannRegimeBoundsTheMargin) {
  // Built-in example family: unit constant term plus one contraction term,
  // in every scalar algebra. When r < 1 the half-plane margin cannot drop
  // below (1 - r) * indicator(a_0).
  const auto check = [](auto coeff, double r) {
    using Coeff = decltype(coeff);
    const auto set = std::make_shared<const GeneratedSemigroup>(
        std::vector<Rational>{Rational(1)}, Rational(6));
    Series<GeneratedSemigroup, Coeff> f(set);
    const Coeff one = CoeffShape<Coeff>{}.one();
    f.set(Rational(0), one);
    f.set(Rational(1), r * coeff);
    const auto [g, cert] = invertNeumann(f, Weight::trivial());
    ASSERT_TRUE(cert.contractionRatio);
    ASSERT_LT(*cert.contractionRatio, 1.0);
    const auto report = halfPlaneMargin(f, 6, 12, 101, 40);
    EXPECT_GE(report.minValue,
              (1.0 - *cert.contractionRatio) * indicator(one) - 1e-6);
  };
  check(Complex(1, 0), 0.5);
  check(Bicomplex(Complex(0.2, 0.1), Complex(0.5, -0.3)), 0.9);
  check(Quaternion(0.3, 0.4, 0.2, -0.1), 0.8);
}

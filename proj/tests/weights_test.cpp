#include "dirichlet/weights.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dirichlet;

TEST(WeightEvaluate, BuiltinsAtKnownPoints) {
  EXPECT_EQ(evaluate(Weight::trivial(), Rational(7, 3)), 1.0);
  EXPECT_EQ(evaluate(Weight::trivial(), std::int64_t{42}), 1.0);
  EXPECT_NEAR(evaluate(Weight::polynomial(2.0), Rational(1)), 4.0, 1e-12);
  EXPECT_NEAR(evaluate(Weight::subexponential(1.0, 0.5), Rational(4)),
              std::exp(2.0), 1e-9);
  EXPECT_NEAR(evaluate(Weight::exponential(1.0), Rational(2)), std::exp(2.0),
              1e-9);
  // multiplicative domain: lambda stands for ln n
  EXPECT_NEAR(evaluate(Weight::polynomial(1.0), std::int64_t{2}),
              1.0 + std::log(2.0), 1e-12);
}

TEST(WeightEvaluate, UnitIsExactlyOneForEveryKind) {
  const std::vector<Weight> weights{
      Weight::trivial(), Weight::polynomial(1.5),
      Weight::subexponential(0.7, 0.5), Weight::exponential(0.3)};
  for (const auto& w : weights) {
    EXPECT_EQ(evaluate(w, Rational(0)), 1.0);
    EXPECT_EQ(evaluate(w, std::int64_t{1}), 1.0);
  }
  EXPECT_EQ(evaluate(Weight::tableMultiplicative({{1, 1.0}, {2, 3.0}}),
                     std::int64_t{1}),
            1.0);
}

TEST(WeightEvaluate, TableMissingIndexThrows) {
  const auto w = Weight::tableMultiplicative({{1, 1.0}, {2, 2.0}});
  EXPECT_EQ(evaluate(w, std::int64_t{2}), 2.0);
  EXPECT_THROW(evaluate(w, std::int64_t{3}), Error);
}

TEST(WeightEvaluate, ExplicitDomainMismatchThrows) {
  const auto additive = Weight::polynomial(1.0, WeightDomain::additive);
  EXPECT_THROW(evaluate(additive, std::int64_t{2}), DescriptorMismatch);
  const auto mult = Weight::polynomial(1.0, WeightDomain::multiplicative);
  EXPECT_THROW(evaluate(mult, Rational(1)), DescriptorMismatch);
}

TEST(WeightValidation, BadParameters) {
  EXPECT_THROW(Weight::polynomial(-1.0), Error);
  EXPECT_THROW(Weight::subexponential(0.0, 0.5), Error);
  EXPECT_THROW(Weight::subexponential(1.0, 1.0), Error);
  EXPECT_THROW(Weight::exponential(0.0), Error);
  EXPECT_THROW(Weight::tableMultiplicative({{2, 2.0}}), Error);   // no unit
  EXPECT_THROW(Weight::tableMultiplicative({{1, 1.0}, {2, 0.5}}), Error);
}

TEST(Submultiplicative, PolynomialExhaustiveOnSmallLine) {
  const GeneratedSemigroup line({Rational(1)}, Rational(10));
  const auto report =
      checkSubmultiplicative(Weight::polynomial(2.0), line, 100000);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.note, "exhaustive");
  EXPECT_LE(report.worst, 1.0 + 1e-12);
}

TEST(Submultiplicative, ExponentialIsTheEqualityCase) {
  const GeneratedSemigroup line({Rational(1)}, Rational(8));
  const auto report =
      checkSubmultiplicative(Weight::exponential(1.0), line, 100000);
  EXPECT_TRUE(report.pass);
  EXPECT_NEAR(report.worst, 1.0, 1e-12);
}

TEST(Submultiplicative, BadTableFails) {
  // omega(1+1) = 3 > omega(1)^2 = 1.
  const GeneratedSemigroup line({Rational(1)}, Rational(2));
  const auto w = Weight::tableAdditive(
      {{Rational(0), 1.0}, {Rational(1), 1.0}, {Rational(2), 3.0}});
  const auto report = checkSubmultiplicative(w, line, 1000);
  EXPECT_FALSE(report.pass);
  EXPECT_NEAR(report.worst, 3.0, 1e-12);
}

TEST(Submultiplicative, MultiplicativePolynomialOnOrdinary) {
  const auto report = checkSubmultiplicative(Weight::polynomial(1.5),
                                             OrdinaryIndexSet(64), 1000000);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.note, "exhaustive");
}

TEST(Admissible, TrivialIsExactlyOneEverywhere) {
  const auto report = checkAdmissible(Weight::trivial(), {0.5, 1.0, 2.0}, 20);
  EXPECT_TRUE(report.pass);
  for (const auto& traj : report.trajectories)
    for (const double est : traj) EXPECT_EQ(est, 1.0);
}

TEST(Admissible, ExponentialStuckAtExpBetaLambda) {
  const auto report = checkAdmissible(Weight::exponential(0.5), {2.0}, 20);
  EXPECT_FALSE(report.pass);
  for (const double est : report.trajectories[0])
    EXPECT_NEAR(est, std::exp(1.0), 1e-9);
}

TEST(Admissible, SubexponentialClosedFormAtDepth20) {
  // omega(n lambda)^{1/n} = exp(beta lambda^gamma n^{gamma-1});
  // at beta = 1, gamma = 1/2, lambda = 1, n = 2^20 this is exp(2^{-10}).
  const auto report = checkAdmissible(Weight::subexponential(1.0, 0.5), {1.0}, 20);
  EXPECT_TRUE(report.pass);
  EXPECT_NEAR(report.trajectories[0].back(), std::exp(std::pow(2.0, -10.0)),
              1e-9);
  EXPECT_NEAR(report.trajectories[0].back(), 1.000977, 5e-7);
}

TEST(Admissible, DepthPreconditionEnforced) {
  EXPECT_THROW(checkAdmissible(Weight::trivial(), {1.0}, 9), Error);
}

TEST(Classification, BuiltinGridBehavesPerFamily) {
  const std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
  const int depth = 140;  // deep enough for gamma = 0.9
  for (const double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const auto w = Weight::polynomial(alpha);
    EXPECT_TRUE(checkAdmissible(w, lambdas, depth).pass) << "alpha " << alpha;
    EXPECT_TRUE(checkSubmultiplicative(w, GeneratedSemigroup({Rational(1, 2)},
                                                             Rational(8)))
                    .pass);
  }
  for (const double beta : {0.1, 1.0})
    for (const double gamma : {0.25, 0.5, 0.9}) {
      const auto w = Weight::subexponential(beta, gamma);
      EXPECT_TRUE(checkAdmissible(w, lambdas, depth).pass)
          << "beta " << beta << " gamma " << gamma;
      EXPECT_TRUE(checkSubmultiplicative(w, GeneratedSemigroup({Rational(1, 2)},
                                                               Rational(8)))
                      .pass);
    }
  for (const double beta : {0.1, 1.0})
    EXPECT_FALSE(checkAdmissible(Weight::exponential(beta), lambdas, depth).pass)
        << "beta " << beta;
}

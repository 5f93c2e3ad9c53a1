#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dirichlet/errors.hpp"
#include "dirichlet/rational.hpp"
#include "dirichlet/semigroup.hpp"

namespace dirichlet {

enum class WeightKind { trivial, polynomial, subexponential, exponential, table };

/// Whether the weight is a function of the additive index lambda or of the
/// ordinary index n. Unset means the weight adapts to whichever index set it
/// is used with.
enum class WeightDomain { additive, multiplicative };

/// Submultiplicative weight on the index semigroup, omega >= 1 and
/// omega(unit) = 1. Built-in families:
///   trivial          1
///   polynomial       (1 + lambda)^alpha          (alpha >= 0)
///   subexponential   exp(beta * lambda^gamma)    (beta > 0, 0 < gamma < 1)
///   exponential      exp(beta * lambda)          (beta > 0)
///   table            explicit values
/// On the multiplicative domain lambda stands for ln n, so the polynomial
/// family reads (1 + ln n)^alpha.
class Weight {
public:
  static Weight trivial() { return Weight(WeightKind::trivial); }

  static Weight polynomial(double alpha,
                           std::optional<WeightDomain> domain = std::nullopt) {
    if (alpha < 0) throw Error("polynomial weight needs alpha >= 0");
    Weight w(WeightKind::polynomial, domain);
    w.alpha_ = alpha;
    return w;
  }

  static Weight subexponential(double beta, double gamma,
                               std::optional<WeightDomain> domain = std::nullopt) {
    if (beta <= 0 || gamma <= 0 || gamma >= 1)
      throw Error("subexponential weight needs beta > 0 and 0 < gamma < 1");
    Weight w(WeightKind::subexponential, domain);
    w.beta_ = beta;
    w.gamma_ = gamma;
    return w;
  }

  static Weight exponential(double beta,
                            std::optional<WeightDomain> domain = std::nullopt) {
    if (beta <= 0) throw Error("exponential weight needs beta > 0");
    Weight w(WeightKind::exponential, domain);
    w.beta_ = beta;
    return w;
  }

  static Weight tableMultiplicative(std::map<std::int64_t, double> values) {
    Weight w(WeightKind::table, WeightDomain::multiplicative);
    if (values.count(1) == 0 || values.at(1) != 1.0)
      throw Error("table weight needs omega(1) = 1");
    for (const auto& [n, v] : values)
      if (v < 1.0) throw Error("weights must be >= 1");
    w.multTable_ = std::move(values);
    return w;
  }

  static Weight tableAdditive(std::map<Rational, double> values) {
    Weight w(WeightKind::table, WeightDomain::additive);
    if (values.count(Rational(0)) == 0 || values.at(Rational(0)) != 1.0)
      throw Error("table weight needs omega(0) = 1");
    for (const auto& [l, v] : values)
      if (v < 1.0) throw Error("weights must be >= 1");
    w.addTable_ = std::move(values);
    return w;
  }

  WeightKind kind() const { return kind_; }
  std::optional<WeightDomain> domain() const { return domain_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const std::map<std::int64_t, double>& multiplicativeTable() const {
    return multTable_;
  }
  const std::map<Rational, double>& additiveTable() const { return addTable_; }

  bool matchesMultiplicative() const {
    return !domain_ || *domain_ == WeightDomain::multiplicative;
  }
  bool matchesAdditive() const {
    return !domain_ || *domain_ == WeightDomain::additive;
  }

  /// log omega as a function of the real additive argument. Table weights
  /// have no closed form off their support.
  double logAt(double lambda) const {
    switch (kind_) {
      case WeightKind::trivial:
        return 0.0;
      case WeightKind::polynomial:
        return alpha_ * std::log1p(lambda);
      case WeightKind::subexponential:
        return beta_ * std::pow(lambda, gamma_);
      case WeightKind::exponential:
        return beta_ * lambda;
      case WeightKind::table:
        throw Error("table weight has no analytic form");
    }
    return 0.0;
  }

private:
  explicit Weight(WeightKind kind,
                  std::optional<WeightDomain> domain = std::nullopt)
      : kind_(kind), domain_(domain) {}

  WeightKind kind_;
  std::optional<WeightDomain> domain_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  std::map<std::int64_t, double> multTable_;
  std::map<Rational, double> addTable_;
};

/// omega(n) on the ordinary semigroup; lambda stands for ln n.
inline double evaluate(const Weight& w, std::int64_t n) {
  if (n < 1) throw Error("ordinary index must be >= 1");
  if (!w.matchesMultiplicative())
    throw DescriptorMismatch("additive weight applied to an ordinary index");
  switch (w.kind()) {
    case WeightKind::trivial:
      return 1.0;
    case WeightKind::polynomial:
      return std::pow(1.0 + std::log(static_cast<double>(n)), w.alpha());
    case WeightKind::subexponential:
      return std::exp(w.beta() *
                      std::pow(std::log(static_cast<double>(n)), w.gamma()));
    case WeightKind::exponential:
      return std::exp(w.beta() * std::log(static_cast<double>(n)));
    case WeightKind::table: {
      const auto it = w.multiplicativeTable().find(n);
      if (it == w.multiplicativeTable().end())
        throw Error("table weight missing index " + std::to_string(n));
      return it->second;
    }
  }
  return 1.0;
}

/// omega(lambda) on a generated semigroup.
inline double evaluate(const Weight& w, const Rational& lambda) {
  if (!w.matchesAdditive())
    throw DescriptorMismatch("multiplicative weight applied to an additive index");
  if (w.kind() == WeightKind::table) {
    const auto it = w.additiveTable().find(lambda);
    if (it == w.additiveTable().end())
      throw Error("table weight missing index " + lambda.toString());
    return it->second;
  }
  if (w.kind() == WeightKind::trivial) return 1.0;
  if (w.kind() == WeightKind::polynomial)
    return std::pow(1.0 + lambda.toDouble(), w.alpha());
  return std::exp(w.logAt(lambda.toDouble()));
}

/// Outcome of a numeric property check.
struct PropertyReport {
  bool pass = false;
  double worst = 0.0;  // worst ratio (submultiplicativity) or estimate
  std::size_t samplesEvaluated = 0;
  std::string note;
  std::vector<std::vector<double>> trajectories;  // admissibility only
};

namespace detail {
inline constexpr double kSubmultSlack = 1e-12;
}

/// Samples pairs within the window and reports the worst ratio
/// omega(l1+l2) / (omega(l1) omega(l2)); exhaustive when the pair count
/// fits in sampleCount, seeded-random otherwise.
inline PropertyReport checkSubmultiplicative(const Weight& w,
                                             const OrdinaryIndexSet& set,
                                             std::size_t sampleCount = 200000) {
  PropertyReport report;
  report.worst = 0.0;
  const std::int64_t n = set.truncation();
  std::size_t exhaustive = 0;
  for (std::int64_t m = 1; m <= n; ++m) exhaustive += static_cast<std::size_t>(n / m);
  const auto* table =
      w.kind() == WeightKind::table ? &w.multiplicativeTable() : nullptr;
  auto probe = [&](std::int64_t a, std::int64_t b) {
    if (table && (!table->count(a) || !table->count(b) || !table->count(a * b)))
      return;
    const double ratio = evaluate(w, a * b) / (evaluate(w, a) * evaluate(w, b));
    if (ratio > report.worst) report.worst = ratio;
    ++report.samplesEvaluated;
  };
  if (exhaustive <= sampleCount) {
    for (std::int64_t a = 1; a <= n; ++a)
      for (std::int64_t b = 1; a * b <= n; ++b) probe(a, b);
    report.note = "exhaustive";
  } else {
    std::mt19937_64 rng(0x77e1);
    std::uniform_int_distribution<std::int64_t> dist(1, n);
    for (std::size_t i = 0; i < sampleCount; ++i) {
      const std::int64_t a = dist(rng), b = dist(rng);
      if (a * b <= n) probe(a, b);
    }
    report.note = "sampled";
  }
  report.pass = report.worst <= 1.0 + detail::kSubmultSlack;
  return report;
}

inline PropertyReport checkSubmultiplicative(const Weight& w,
                                             const GeneratedSemigroup& set,
                                             std::size_t sampleCount = 200000) {
  PropertyReport report;
  report.worst = 0.0;
  const auto& elems = set.elements();
  const auto* table =
      w.kind() == WeightKind::table ? &w.additiveTable() : nullptr;
  auto probe = [&](const Rational& a, const Rational& b) {
    const Rational sum = a + b;
    if (!set.contains(sum)) return;
    if (table && (!table->count(a) || !table->count(b) || !table->count(sum)))
      return;
    const double ratio = evaluate(w, sum) / (evaluate(w, a) * evaluate(w, b));
    if (ratio > report.worst) report.worst = ratio;
    ++report.samplesEvaluated;
  };
  if (elems.size() * elems.size() <= sampleCount) {
    for (const auto& a : elems)
      for (const auto& b : elems) probe(a, b);
    report.note = "exhaustive";
  } else {
    std::mt19937_64 rng(0x77e1);
    std::uniform_int_distribution<std::size_t> dist(0, elems.size() - 1);
    for (std::size_t i = 0; i < sampleCount; ++i)
      probe(elems[dist(rng)], elems[dist(rng)]);
    report.note = "sampled";
  }
  report.pass = report.worst <= 1.0 + detail::kSubmultSlack;
  return report;
}

/// Numeric admissibility proxy: the limit omega(n*lambda)^{1/n} -> 1 is
/// probed along n = 2^k in log space. Passes when the deepest estimate is
/// within tauAdm of 1 and the estimates are non-increasing beyond k = 3.
inline PropertyReport checkAdmissible(const Weight& w,
                                      const std::vector<double>& lambdaSamples,
                                      int doublingDepth,
                                      double tauAdm = 1e-3) {
  if (doublingDepth < 10) throw Error("doubling depth must be >= 10");
  PropertyReport report;
  report.pass = true;
  report.worst = 1.0;
  for (const double lambda : lambdaSamples) {
    std::vector<double> traj;
    traj.reserve(static_cast<std::size_t>(doublingDepth) + 1);
    double scale = 1.0;  // 2^k
    for (int k = 0; k <= doublingDepth; ++k, scale *= 2.0) {
      traj.push_back(std::exp(w.logAt(scale * lambda) / scale));
      ++report.samplesEvaluated;
    }
    const double final = traj.back();
    bool monotone = true;
    for (std::size_t k = 3; k + 1 < traj.size(); ++k)
      if (traj[k + 1] > traj[k] + 1e-12) monotone = false;
    if (final > report.worst) report.worst = final;
    if (final > 1.0 + tauAdm || !monotone) report.pass = false;
    report.trajectories.push_back(std::move(traj));
  }
  return report;
}

}  // namespace dirichlet

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/matrix.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet {

// ---------------------------------------------------------------------------
// Invertibility indicator
// ---------------------------------------------------------------------------

/// Scalar gauge of how far a value is from the non-invertible set: modulus
/// for C and H, the smaller idempotent modulus for BC, the smallest singular
/// value for matrices (through the component split or adjoint embedding for
/// BC / H entries).
inline double indicator(const Complex& v) { return std::abs(v); }
inline double indicator(const Bicomplex& v) {
  return std::min(std::abs(v.l1), std::abs(v.l2));
}
inline double indicator(const Quaternion& v) { return coeffNorm(v); }
inline double indicator(const Matrix<Complex>& v) {
  return smallestSingularValue(v);
}
inline double indicator(const Matrix<Bicomplex>& v) {
  const auto [m1, m2] = idempotentComponents(v);
  return std::min(smallestSingularValue(m1), smallestSingularValue(m2));
}
inline double indicator(const Matrix<Quaternion>& v) {
  return smallestSingularValue(adjointEmbed(v));
}

/// Certified-upper-bound record: minValue is the smallest indicator value
/// found, an UPPER bound on the true infimum. The argmin is either a finite
/// half-plane point, the asymptotic point j -> infinity (indicator of the
/// unit-index coefficient), or a polydisc point.
struct MarginReport {
  double minValue = 0.0;
  std::optional<HalfPlanePoint> argminHalfPlane;
  bool asymptotic = false;
  std::vector<Complex> argminPolydisc;
  std::vector<std::int64_t> primes;
  std::size_t samplesEvaluated = 0;
  bool refined = false;
  std::optional<double> detModulusAtArgmin;  // complex matrices only
};

namespace detail {

/// Tie order for equal indicator values on the half plane: smaller j, then
/// smaller |t|, then positive t. The |t| step keeps the reported argmin on
/// the positive-t zero of conjugate-symmetric series.
inline bool halfPlaneTieBefore(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  if (a.j != b.j) return a.j < b.j;
  if (std::abs(a.t) != std::abs(b.t)) return std::abs(a.t) < std::abs(b.t);
  return a.t > b.t;
}

template <class Coeff>
std::optional<double> maybeDetModulus(const Coeff& v) {
  if constexpr (std::is_same_v<Coeff, Matrix<Complex>>)
    return std::abs(determinant(v));
  else
    return std::nullopt;
}

}  // namespace detail

/// Grid scan of indicator(f(s)) over [0, jMax] x [-tMax, tMax] (gridSteps
/// j-values, 2*gridSteps - 1 t-values) plus the asymptotic point, followed by
/// deterministic coordinate-descent refinement (shrink factor 0.5) from the
/// best finite grid point. The result only ever improves when the grid or
/// the refinement budget grows.
template <class Set, class Coeff>
MarginReport halfPlaneMargin(const Series<Set, Coeff>& f, double jMax = 10.0,
                             double tMax = 20.0, std::size_t gridSteps = 201,
                             std::size_t refineIters = 60) {
  if (gridSteps < 2) throw Error("halfPlaneMargin needs gridSteps >= 2");
  const std::size_t jCount = gridSteps;
  const std::size_t tCount = 2 * gridSteps - 1;  // odd: 0 sits on the grid
  const double jStep = jMax / static_cast<double>(jCount - 1);
  const double tStep = tMax / static_cast<double>(gridSteps - 1);

  // t laid out symmetrically around 0 so t and -t are exact negations; the
  // indicator of a conjugate-symmetric series then ties bitwise and the tie
  // order below resolves toward positive t.
  const auto gridPoint = [&](std::size_t k) {
    const auto ji = static_cast<double>(k / tCount);
    const auto ti = static_cast<std::ptrdiff_t>(k % tCount) -
                    static_cast<std::ptrdiff_t>(gridSteps - 1);
    return HalfPlanePoint(ji * jStep, static_cast<double>(ti) * tStep);
  };

  const auto objective = [&f](const HalfPlanePoint& p) {
    return indicator(evaluate(f, p));
  };

  MarginReport report;
  std::vector<double> values(jCount * tCount);
  parallelFor(jCount * tCount,
              [&](std::size_t k) { values[k] = objective(gridPoint(k)); });
  report.samplesEvaluated = values.size();

  HalfPlanePoint best = gridPoint(0);
  double bestValue = values[0];
  for (std::size_t k = 0; k < values.size(); ++k) {
    const HalfPlanePoint p = gridPoint(k);
    if (values[k] < bestValue ||
        (values[k] == bestValue && detail::halfPlaneTieBefore(p, best))) {
      bestValue = values[k];
      best = p;
    }
  }

  // Coordinate descent, deterministic: probe the four axis moves, take the
  // best strict improvement, halve the step when none improves.
  double stepJ = jStep, stepT = tStep;
  for (std::size_t iter = 0; iter < refineIters; ++iter) {
    HalfPlanePoint candidate = best;
    double candidateValue = bestValue;
    const double jMoves[2] = {best.j - stepJ, best.j + stepJ};
    for (const double j2 : jMoves) {
      if (j2 < 0.0) continue;
      const HalfPlanePoint p(j2, best.t);
      const double v = objective(p);
      ++report.samplesEvaluated;
      if (v < candidateValue) {
        candidateValue = v;
        candidate = p;
      }
    }
    const double tMoves[2] = {best.t - stepT, best.t + stepT};
    for (const double t2 : tMoves) {
      const HalfPlanePoint p(best.j, t2);
      const double v = objective(p);
      ++report.samplesEvaluated;
      if (v < candidateValue) {
        candidateValue = v;
        candidate = p;
      }
    }
    if (candidateValue < bestValue) {
      bestValue = candidateValue;
      best = candidate;
      report.refined = true;
    } else {
      stepJ *= 0.5;
      stepT *= 0.5;
    }
  }

  const Coeff atInfinity = f.unitCoefficient();
  const double asymptoticValue = indicator(atInfinity);
  ++report.samplesEvaluated;
  if (asymptoticValue < bestValue) {
    report.asymptotic = true;
    report.minValue = asymptoticValue;
    report.detModulusAtArgmin = detail::maybeDetModulus(atInfinity);
  } else {
    report.argminHalfPlane = best;
    const Coeff atBest = evaluate(f, best);
    report.minValue = indicator(atBest);  // re-evaluated at the argmin
    report.detModulusAtArgmin = detail::maybeDetModulus(atBest);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Polydisc margin over semicharacters of (N, *)
// ---------------------------------------------------------------------------

/// Primes dividing at least one index in the support; these are the only
/// coordinates a semicharacter is evaluated on.
template <class Coeff>
std::vector<std::int64_t> supportPrimes(
    const Series<OrdinaryIndexSet, Coeff>& f) {
  std::vector<std::int64_t> primes;
  for (const auto& [n, v] : f.coefficients()) {
    std::int64_t m = n;
    for (std::int64_t p = 2; p * p <= m; ++p)
      while (m % p == 0) {
        if (std::find(primes.begin(), primes.end(), p) == primes.end())
          primes.push_back(p);
        m /= p;
      }
    if (m > 1 && std::find(primes.begin(), primes.end(), m) == primes.end())
      primes.push_back(m);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

/// Value of the series under the semicharacter chi(n) = prod z_p^{v_p(n)},
/// one closed-unit-disc coordinate per prime.
template <class Coeff>
Coeff semicharacterValue(const Series<OrdinaryIndexSet, Coeff>& f,
                         const std::vector<std::int64_t>& primes,
                         const std::vector<Complex>& zs) {
  Coeff acc = f.shape().zero();
  for (const auto& [n, v] : f.coefficients()) {
    Complex chi(1.0, 0.0);
    std::int64_t m = n;
    for (std::size_t i = 0; i < primes.size(); ++i)
      while (m % primes[i] == 0) {
        chi *= zs[i];
        m /= primes[i];
      }
    acc = acc + scalarAction(v, chi);
  }
  return acc;
}

namespace detail {

inline double haltonValue(std::size_t index, std::int64_t base) {
  double result = 0.0, f = 1.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(index % static_cast<std::size_t>(base));
    index /= static_cast<std::size_t>(base);
  }
  return result;
}

inline std::vector<std::int64_t> firstPrimes(std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 2; out.size() < count; ++c) {
    bool prime = true;
    for (std::int64_t p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

inline bool polydiscTieBefore(const std::vector<Complex>& a,
                              const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace detail

/// Upper bound on the infimum of the invertibility indicator over the
/// semicharacter polydisc: all corner points z_p in {1, -1, i, -i} (up to
/// the budget, since modulus minima of real-coefficient polynomials sit at
/// real corners so often), then Halton samples of the disc, then coordinate
/// descent with radial clamping. Ordinary index sets only.
template <class Coeff>
MarginReport polydiscMargin(const Series<OrdinaryIndexSet, Coeff>& f,
                            std::size_t sampleBudget = 4096,
                            std::size_t refineIters = 60,
                            std::size_t seed = 1) {
  static_assert(std::is_same_v<Coeff, Complex> ||
                    std::is_same_v<Coeff, Matrix<Complex>>,
                "polydisc margin is defined over C and M_d(C)");
  MarginReport report;
  report.primes = supportPrimes(f);
  const std::size_t k = report.primes.size();

  const auto objective = [&](const std::vector<Complex>& zs) {
    return indicator(semicharacterValue(f, report.primes, zs));
  };

  std::vector<Complex> best(k, Complex(1.0, 0.0));
  double bestValue = objective(best);
  ++report.samplesEvaluated;
  auto consider = [&](const std::vector<Complex>& zs, double v) {
    if (v < bestValue ||
        (v == bestValue && detail::polydiscTieBefore(zs, best))) {
      bestValue = v;
      best = zs;
    }
  };

  // Corner sweep in mixed-radix order over {1, -1, i, -i}^k.
  static const Complex corners[4] = {Complex(1, 0), Complex(-1, 0),
                                     Complex(0, 1), Complex(0, -1)};
  if (k > 0) {
    std::vector<std::size_t> digits(k, 0);
    while (report.samplesEvaluated < sampleBudget) {
      std::vector<Complex> zs(k);
      for (std::size_t i = 0; i < k; ++i) zs[i] = corners[digits[i]];
      consider(zs, objective(zs));
      ++report.samplesEvaluated;
      std::size_t pos = 0;
      while (pos < k && ++digits[pos] == 4) digits[pos++] = 0;
      if (pos == k) break;  // wrapped around: all corners visited
    }
  }

  // Quasi-random interior samples: Halton pairs mapped to the disc.
  if (k > 0) {
    const auto bases = detail::firstPrimes(2 * k);
    for (std::size_t i = seed; report.samplesEvaluated < sampleBudget; ++i) {
      std::vector<Complex> zs(k);
      for (std::size_t c = 0; c < k; ++c) {
        const double u = detail::haltonValue(i, bases[2 * c]);
        const double v = detail::haltonValue(i, bases[2 * c + 1]);
        const double r = std::sqrt(u);
        zs[c] = Complex(r * std::cos(2 * M_PI * v), r * std::sin(2 * M_PI * v));
      }
      consider(zs, objective(zs));
      ++report.samplesEvaluated;
    }
  }

  // Coordinate descent over (Re z_p, Im z_p), clamped to the closed disc.
  double step = 0.25;
  for (std::size_t iter = 0; k > 0 && iter < refineIters; ++iter) {
    std::vector<Complex> candidate = best;
    double candidateValue = bestValue;
    for (std::size_t c = 0; c < 2 * k; ++c) {
      for (const double sign : {-1.0, 1.0}) {
        std::vector<Complex> zs = best;
        Complex& z = zs[c / 2];
        if (c % 2 == 0)
          z += Complex(sign * step, 0.0);
        else
          z += Complex(0.0, sign * step);
        if (std::abs(z) > 1.0) z /= std::abs(z);
        const double v = objective(zs);
        ++report.samplesEvaluated;
        if (v < candidateValue) {
          candidateValue = v;
          candidate = zs;
        }
      }
    }
    if (candidateValue < bestValue) {
      bestValue = candidateValue;
      best = candidate;
      report.refined = true;
    } else {
      step *= 0.5;
    }
  }

  const Coeff atBest = semicharacterValue(f, report.primes, best);
  report.minValue = indicator(atBest);
  report.argminPolydisc = best;
  report.detModulusAtArgmin = detail::maybeDetModulus(atBest);
  return report;
}

}  // namespace dirichlet

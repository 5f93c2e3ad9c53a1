#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/matrix.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet {

enum class InversionMethod {
  direct,
  neumann,
  adjugate,
  bicomplexSplit,
  quaternionSlice,
  adjointEmbedding,
};

inline const char* methodName(InversionMethod m) {
  switch (m) {
    case InversionMethod::direct: return "recursion";
    case InversionMethod::neumann: return "neumann";
    case InversionMethod::adjugate: return "adjugate";
    case InversionMethod::bicomplexSplit: return "split";
    case InversionMethod::quaternionSlice: return "slice";
    case InversionMethod::adjointEmbedding: return "embed";
  }
  return "?";
}

/// Record attached to a computed inverse. Residuals are the max coefficient
/// norms of f*g - delta and g*f - delta on the window; the Neumann fields
/// certify the l^1 bound when the contraction ratio is below 1.
struct InversionCertificate {
  InversionMethod method = InversionMethod::direct;
  std::optional<double> contractionRatio;
  std::optional<double> normBound;
  double residualLeft = 0.0;
  double residualRight = 0.0;

  bool withinTolerance(double tol) const {
    return residualLeft <= tol && residualRight <= tol;
  }
};

/// Checks f*g = g*f = delta on the window; report-only.
template <class Set, class Coeff>
InversionCertificate verifyInverse(const Series<Set, Coeff>& f,
                                   const Series<Set, Coeff>& g) {
  requireCompatible(f, g);
  const auto unit = delta<Set, Coeff>(f.indexSetPtr(), f.shape());
  InversionCertificate cert;
  cert.residualLeft = maxCoefficientDistance(convolve(f, g), unit);
  cert.residualRight = maxCoefficientDistance(convolve(g, f), unit);
  return cert;
}

namespace detail {

template <class Coeff>
Coeff inverseOfConstantTerm(const Coeff& a0, const std::string& who) {
  const auto inv = tryInverse(a0);
  if (!inv)
    throw NotInvertibleConstantTerm(who +
                                    ": unit-index coefficient not invertible");
  return *inv;
}

}  // namespace detail

/// Coefficientwise solution of f*g = delta in ascending index order, the
/// quotient inverse on the truncation window. Left-anchored: each new
/// coefficient is a0^{-1} times the accumulated sum.
///
/// Works on both index set kinds; over the ordinary semigroup this is the
/// classic divisor recursion (and reproduces the Mobius function from the
/// all-ones series).
template <class Set, class Coeff>
Series<Set, Coeff> invertDirect(const Series<Set, Coeff>& f) {
  const Set& set = f.indexSet();
  const Coeff a0inv =
      detail::inverseOfConstantTerm(f.unitCoefficient(), "recursion");
  Series<Set, Coeff> g(f.indexSetPtr(), f.shape());
  g.set(set.unit(), a0inv);
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    const auto idx = set.indexAt(pos);
    if (idx == set.unit()) continue;
    Coeff acc = f.shape().zero();
    bool any = false;
    for (const auto& [i1, i2] : set.decompositions(idx)) {
      if (i1 == set.unit()) continue;  // the unknown term
      if (!f.has(i1) || !g.has(i2)) continue;
      acc = acc + f.at(i1) * g.at(i2);
      any = true;
    }
    if (any) g.set(idx, -(a0inv * acc));
  }
  return g;
}

/// Right-anchored variant: the sum multiplies a0^{-1} on the right. Over a
/// noncommutative coefficient algebra the two recursions are distinct
/// computations with the same quotient inverse as result; their agreement is
/// asserted in tests, not assumed.
template <class Set, class Coeff>
Series<Set, Coeff> invertDirectRight(const Series<Set, Coeff>& f) {
  const Set& set = f.indexSet();
  const Coeff a0inv =
      detail::inverseOfConstantTerm(f.unitCoefficient(), "recursion");
  Series<Set, Coeff> g(f.indexSetPtr(), f.shape());
  g.set(set.unit(), a0inv);
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    const auto idx = set.indexAt(pos);
    if (idx == set.unit()) continue;
    Coeff acc = f.shape().zero();
    bool any = false;
    for (const auto& [i1, i2] : set.decompositions(idx)) {
      if (i2 == set.unit()) continue;
      if (!g.has(i1) || !f.has(i2)) continue;
      acc = acc + g.at(i1) * f.at(i2);
      any = true;
    }
    if (any) g.set(idx, -(acc * a0inv));
  }
  return g;
}

/// Geometric-series inverse with a certified weighted bound. With
/// u = a0^{-1} delta and h = delta - u*f, the inverse is (sum_k h^{*k}) * u,
/// valid whenever r = |h|_omega < 1; then |g|_omega <= |a0^{-1}| / (1 - r).
/// Partial sums stop early once a term's omega-norm drops below 1e-14.
///
/// Throws NeumannNotContractive when r >= 1. That outcome is inconclusive:
/// invertibility can hold far beyond the contraction regime.
template <class Set, class Coeff>
std::pair<Series<Set, Coeff>, InversionCertificate> invertNeumann(
    const Series<Set, Coeff>& f, const Weight& w, std::size_t kmax = 1000) {
  const Coeff a0inv =
      detail::inverseOfConstantTerm(f.unitCoefficient(), "neumann");
  const auto u = unitEmbedding(f.indexSetPtr(), a0inv);
  const auto unit = delta<Set, Coeff>(f.indexSetPtr(), f.shape());
  const auto h = subtract(unit, convolve(u, f));
  const double r = weightedNorm(h, w);
  if (!(r < 1.0))
    throw NeumannNotContractive(
        "contraction ratio " + std::to_string(r) + " >= 1", r);

  auto sum = unit;
  auto term = unit;
  for (std::size_t k = 1; k <= kmax; ++k) {
    term = convolve(term, h);
    if (weightedNorm(term, w) < 1e-14) break;
    sum = add(sum, term);
  }
  auto g = convolve(sum, u);

  InversionCertificate cert = verifyInverse(f, g);
  cert.method = InversionMethod::neumann;
  cert.contractionRatio = r;
  cert.normBound = coeffNorm(a0inv) / (1.0 - r);
  return {std::move(g), cert};
}

// ---------------------------------------------------------------------------
// Matrix series over C: adjugate / determinant route
// ---------------------------------------------------------------------------

namespace detail {

template <class Set>
using ScalarSeries = Series<Set, Complex>;

template <class Set>
std::vector<std::vector<ScalarSeries<Set>>> entrySeries(
    const Series<Set, Matrix<Complex>>& f) {
  const std::size_t d = f.shape().dim;
  std::vector<std::vector<ScalarSeries<Set>>> out(
      d, std::vector<ScalarSeries<Set>>(d, ScalarSeries<Set>(f.indexSetPtr())));
  for (const auto& [idx, m] : f.coefficients())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out[i][j].set(idx, m(i, j));
  return out;
}

template <class Set>
Series<Set, Matrix<Complex>> seriesFromEntries(
    std::shared_ptr<const Set> set,
    const std::vector<std::vector<ScalarSeries<Set>>>& entries) {
  const std::size_t d = entries.size();
  Series<Set, Matrix<Complex>> out(set, CoeffShape<Matrix<Complex>>{d});
  std::map<typename Set::Index, Matrix<Complex>> staged;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [idx, v] : entries[i][j].coefficients()) {
        auto it = staged.find(idx);
        if (it == staged.end())
          it = staged.emplace(idx, Matrix<Complex>(d)).first;
        it->second(i, j) = v;
      }
  for (auto& [idx, m] : staged) out.set(idx, std::move(m));
  return out;
}

/// Leibniz determinant in the commutative convolution ring of scalar series;
/// cost d! products of d series each.
template <class Set>
ScalarSeries<Set> seriesDeterminant(
    const std::vector<std::vector<ScalarSeries<Set>>>& entries,
    std::shared_ptr<const Set> set) {
  const std::size_t d = entries.size();
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  ScalarSeries<Set> det(set);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    auto prod = entries[0][perm[0]];
    for (std::size_t i = 1; i < d; ++i)
      prod = convolve(prod, entries[i][perm[i]]);
    det = add(det, sign > 0 ? prod : scale(prod, -1.0));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

template <class Set>
std::vector<std::vector<ScalarSeries<Set>>> minorEntries(
    const std::vector<std::vector<ScalarSeries<Set>>>& entries,
    std::size_t dropRow, std::size_t dropCol) {
  std::vector<std::vector<ScalarSeries<Set>>> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i == dropRow) continue;
    std::vector<ScalarSeries<Set>> row;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (j == dropCol) continue;
      row.push_back(entries[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

/// Inverse via the adjugate identity M adj(M) = det(M) I in the commutative
/// ring of scalar series: det by Leibniz expansion, its scalar inverse by the
/// direct recursion, then g = adj(f) * det(f)^{-1} entrywise. Capped at
/// d <= 5 (Leibniz cost d!).
template <class Set>
Series<Set, Matrix<Complex>> invertMatrixAdjugate(
    const Series<Set, Matrix<Complex>>& f) {
  const std::size_t d = f.shape().dim;
  if (d > 5)
    throw DimensionTooLarge("adjugate route capped at d <= 5, got d = " +
                            std::to_string(d));
  const auto entries = detail::entrySeries(f);
  const auto det = detail::seriesDeterminant(entries, f.indexSetPtr());
  Series<Set, Complex> detInv(f.indexSetPtr());
  try {
    detInv = invertDirect(det);
  } catch (const NotInvertibleConstantTerm&) {
    throw NotInvertibleConstantTerm(
        "adjugate: determinant series has non-invertible constant term");
  }

  std::vector<std::vector<detail::ScalarSeries<Set>>> inv(
      d, std::vector<detail::ScalarSeries<Set>>(
             d, detail::ScalarSeries<Set>(f.indexSetPtr())));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // adj(f)_{ij} = (-1)^{i+j} det(minor_{ji})
      detail::ScalarSeries<Set> cof(f.indexSetPtr());
      if (d == 1) {
        cof.set(f.indexSet().unit(), Complex(1.0, 0.0));
      } else {
        cof = detail::seriesDeterminant(detail::minorEntries(entries, j, i),
                                        f.indexSetPtr());
        if ((i + j) % 2 == 1) cof = scale(cof, -1.0);
      }
      inv[i][j] = convolve(cof, detInv);
    }
  return detail::seriesFromEntries(f.indexSetPtr(), inv);
}

// ---------------------------------------------------------------------------
// Bicomplex series: idempotent split
// ---------------------------------------------------------------------------

namespace detail {

/// Complex strategy used for the components produced by the idempotent
/// split: adjugate when the dimension allows it, direct recursion otherwise.
template <class Set, class CComplex>
Series<Set, CComplex> invertComplexAuto(const Series<Set, CComplex>& f) {
  if constexpr (std::is_same_v<CComplex, Matrix<Complex>>) {
    if (f.shape().dim <= 5) return invertMatrixAdjugate(f);
  }
  return invertDirect(f);
}

}  // namespace detail

/// Inverse over BC (scalars or matrices) by inverting the two idempotent
/// component series over C and recombining g = g1 e1 + g2 e2.
template <class Set, class Coeff>
Series<Set, Coeff> invertBicomplexSplit(const Series<Set, Coeff>& f) {
  static_assert(std::is_same_v<Coeff, Bicomplex> ||
                    std::is_same_v<Coeff, Matrix<Bicomplex>>,
                "idempotent split needs bicomplex coefficients");
  constexpr bool isMatrix = std::is_same_v<Coeff, Matrix<Bicomplex>>;
  using CComplex = std::conditional_t<isMatrix, Matrix<Complex>, Complex>;

  CoeffShape<CComplex> cshape;
  if constexpr (isMatrix) cshape.dim = f.shape().dim;
  Series<Set, CComplex> c1(f.indexSetPtr(), cshape);
  Series<Set, CComplex> c2(f.indexSetPtr(), cshape);
  for (const auto& [idx, v] : f.coefficients()) {
    if constexpr (isMatrix) {
      const auto [m1, m2] = idempotentComponents(v);
      c1.set(idx, m1);
      c2.set(idx, m2);
    } else {
      c1.set(idx, v.l1);
      c2.set(idx, v.l2);
    }
  }

  auto invertComponent = [](const Series<Set, CComplex>& comp, int which) {
    try {
      return detail::invertComplexAuto(comp);
    } catch (const NotInvertibleConstantTerm&) {
      throw NotInvertibleConstantTerm(
          "idempotent component " + std::to_string(which) +
          " has non-invertible constant term");
    }
  };
  const auto g1 = invertComponent(c1, 1);
  const auto g2 = invertComponent(c2, 2);

  Series<Set, Coeff> g(f.indexSetPtr(), f.shape());
  for (std::size_t pos = 0; pos < f.indexSet().size(); ++pos) {
    const auto idx = f.indexSet().indexAt(pos);
    if (!g1.has(idx) && !g2.has(idx)) continue;
    if constexpr (isMatrix)
      g.set(idx, idempotentJoin(g1.at(idx), g2.at(idx)));
    else
      g.set(idx, Bicomplex(g1.at(idx), g2.at(idx)));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Quaternion series: slice route (d = 1) and adjoint embedding (matrices)
// ---------------------------------------------------------------------------

/// Inverse over H through the slice decomposition f_lambda = A + B*l.
/// With D := f^j * conj(f^j) + f^l * conj(f^l) (a complex scalar series,
/// conj = coefficient conjugation), the inverse components are
/// g^j = conj(f^j) * D^{-1} and g^l = -f^l * D^{-1}.
template <class Set>
Series<Set, Quaternion> invertQuaternionSlice(const Series<Set, Quaternion>& f) {
  const Quaternion a0 = f.unitCoefficient();
  // |f(0)|^2 = |A0|^2 + |B0|^2 is D's constant term; require it positive.
  if (coeffNorm(a0) < kInvertibilityTol)
    throw NotInvertibleConstantTerm(
        "slice: unit-index coefficient not invertible");

  Series<Set, Complex> fj(f.indexSetPtr());
  Series<Set, Complex> fl(f.indexSetPtr());
  for (const auto& [idx, v] : f.coefficients()) {
    fj.set(idx, v.sliceA());
    fl.set(idx, v.sliceB());
  }

  const auto d = add(convolve(fj, conjugateCoefficients(fj)),
                     convolve(fl, conjugateCoefficients(fl)));
  const auto dInv = invertDirect(d);
  const auto gj = convolve(conjugateCoefficients(fj), dInv);
  const auto gl = convolve(scale(fl, -1.0), dInv);

  Series<Set, Quaternion> g(f.indexSetPtr());
  for (std::size_t pos = 0; pos < f.indexSet().size(); ++pos) {
    const auto idx = f.indexSet().indexAt(pos);
    if (!gj.has(idx) && !gl.has(idx)) continue;
    g.set(idx, Quaternion::fromSlice(gj.at(idx), gl.at(idx)));
  }
  return g;
}

/// Inverse over M_d(H): embed coefficients into M_{2d}(C), invert there
/// (adjugate while 2d <= 5, direct recursion beyond), check the result still
/// has the [[Z,W],[-conj(W),conj(Z)]] block structure, and map back.
template <class Set>
Series<Set, Matrix<Quaternion>> invertQuaternionMatrix(
    const Series<Set, Matrix<Quaternion>>& f,
    double structureTol = 1e-9) {
  const std::size_t d = f.shape().dim;
  const auto a0 = f.unitCoefficient();
  if (!tryInverse(a0))
    throw NotInvertibleConstantTerm(
        "embed: unit-index coefficient not invertible");

  Series<Set, Matrix<Complex>> embedded(f.indexSetPtr(),
                                        CoeffShape<Matrix<Complex>>{2 * d});
  for (const auto& [idx, v] : f.coefficients())
    embedded.set(idx, adjointEmbed(v));

  const auto invEmbedded = 2 * d <= 5 ? invertMatrixAdjugate(embedded)
                                      : invertDirect(embedded);

  Series<Set, Matrix<Quaternion>> g(f.indexSetPtr(), f.shape());
  for (const auto& [idx, m] : invEmbedded.coefficients()) {
    const double defect = adjointStructureDefect(m);
    if (defect > structureTol)
      throw StructureViolation(
          "inverse left the adjoint-embedding image (defect " +
          std::to_string(defect) + ")");
    g.set(idx, adjointExtract(m));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Descriptor-driven selection
// ---------------------------------------------------------------------------

template <class Set, class Coeff>
struct InversionResult {
  Series<Set, Coeff> series;
  InversionMethod method;
};

/// The default strategy per coefficient algebra: adjugate for M_d(C) with
/// d <= 5, split for BC, slice for H, embed for M_d(H), recursion otherwise.
template <class Set, class Coeff>
InversionResult<Set, Coeff> invertAuto(const Series<Set, Coeff>& f) {
  if constexpr (std::is_same_v<Coeff, Matrix<Complex>>) {
    if (f.shape().dim <= 5)
      return {invertMatrixAdjugate(f), InversionMethod::adjugate};
    return {invertDirect(f), InversionMethod::direct};
  } else if constexpr (std::is_same_v<Coeff, Bicomplex> ||
                       std::is_same_v<Coeff, Matrix<Bicomplex>>) {
    return {invertBicomplexSplit(f), InversionMethod::bicomplexSplit};
  } else if constexpr (std::is_same_v<Coeff, Quaternion>) {
    return {invertQuaternionSlice(f), InversionMethod::quaternionSlice};
  } else if constexpr (std::is_same_v<Coeff, Matrix<Quaternion>>) {
    return {invertQuaternionMatrix(f), InversionMethod::adjointEmbedding};
  } else {
    return {invertDirect(f), InversionMethod::direct};
  }
}

}  // namespace dirichlet

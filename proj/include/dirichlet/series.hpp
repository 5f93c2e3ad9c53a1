#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <type_traits>
#include <utility>
#include <vector>

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/matrix.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/semigroup.hpp"
#include "dirichlet/weights.hpp"

namespace dirichlet {

/// A point s = j + it of the closed right half plane.
struct HalfPlanePoint {
  double j = 0.0;
  double t = 0.0;

  HalfPlanePoint() = default;
  HalfPlanePoint(double j_, double t_) : j(j_), t(t_) {
    if (!(j >= 0.0)) throw Error("half-plane point needs j >= 0");
  }
  Complex s() const { return Complex(j, t); }
};

namespace detail {
inline Complex expFactor(std::int64_t n, Complex s) {
  return std::exp(-s * std::log(static_cast<double>(n)));  // n^{-s}
}
inline Complex expFactor(const Rational& lambda, Complex s) {
  return std::exp(-lambda.toDouble() * s);
}
}  // namespace detail

/// Finitely supported coefficient map over a truncation window. Absent
/// indices are zero. Treat instances as values: all arithmetic is by pure
/// functions returning new series, and a series shared between threads must
/// not be mutated.
template <class Set, class Coeff>
class Series {
public:
  using IndexSet = Set;
  using Coefficient = Coeff;
  using Index = typename Set::Index;
  using Shape = CoeffShape<Coeff>;
  using CoeffMap = std::map<Index, Coeff>;

  Series(std::shared_ptr<const Set> set, Shape shape = Shape{})
      : set_(std::move(set)), shape_(shape) {
    if (!set_) throw Error("series needs an index set");
  }

  const Set& indexSet() const { return *set_; }
  const std::shared_ptr<const Set>& indexSetPtr() const { return set_; }
  const Shape& shape() const { return shape_; }
  const CoeffMap& coefficients() const { return coeffs_; }
  std::size_t supportSize() const { return coeffs_.size(); }

  bool has(const Index& idx) const { return coeffs_.count(idx) > 0; }

  Coeff at(const Index& idx) const {
    const auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? shape_.zero() : it->second;
  }

  Coeff unitCoefficient() const { return at(set_->unit()); }

  void set(const Index& idx, Coeff value) {
    if (!set_->contains(idx)) throw Error("coefficient index outside window");
    if (coeffNorm(value) == 0.0)
      coeffs_.erase(idx);
    else
      coeffs_[idx] = std::move(value);
  }

private:
  std::shared_ptr<const Set> set_;
  Shape shape_;
  CoeffMap coeffs_;
};

template <class Set, class Coeff>
void requireCompatible(const Series<Set, Coeff>& a,
                       const Series<Set, Coeff>& b) {
  if (!(a.indexSet() == b.indexSet()))
    throw DescriptorMismatch("series live on different index sets");
  if (!(a.shape() == b.shape()))
    throw DescriptorMismatch("series have different coefficient descriptors");
}

/// The unit series: 1 at the unit index, zero elsewhere.
template <class Set, class Coeff>
Series<Set, Coeff> delta(std::shared_ptr<const Set> set,
                         CoeffShape<Coeff> shape = {}) {
  Series<Set, Coeff> out(std::move(set), shape);
  out.set(out.indexSet().unit(), shape.one());
  return out;
}

/// Series with a single coefficient at the unit index.
template <class Set, class Coeff>
Series<Set, Coeff> unitEmbedding(std::shared_ptr<const Set> set, Coeff value) {
  Series<Set, Coeff> out(std::move(set), shapeOf(value));
  out.set(out.indexSet().unit(), std::move(value));
  return out;
}

template <class Set, class Coeff>
Series<Set, Coeff> add(const Series<Set, Coeff>& a,
                       const Series<Set, Coeff>& b) {
  requireCompatible(a, b);
  Series<Set, Coeff> out(a.indexSetPtr(), a.shape());
  for (const auto& [idx, v] : a.coefficients())
    out.set(idx, b.has(idx) ? v + b.at(idx) : v);
  for (const auto& [idx, v] : b.coefficients())
    if (!a.has(idx)) out.set(idx, v);
  return out;
}

template <class Set, class Coeff>
Series<Set, Coeff> scale(const Series<Set, Coeff>& a, double factor) {
  Series<Set, Coeff> out(a.indexSetPtr(), a.shape());
  for (const auto& [idx, v] : a.coefficients()) out.set(idx, factor * v);
  return out;
}

template <class Set, class Coeff>
Series<Set, Coeff> subtract(const Series<Set, Coeff>& a,
                            const Series<Set, Coeff>& b) {
  return add(a, scale(b, -1.0));
}

/// Dirichlet convolution on the truncated window. Each output coefficient is
/// the sum over the index's decomposition list in table order, so results
/// are bit-identical for any parallelism degree.
template <class Set, class Coeff>
Series<Set, Coeff> convolve(const Series<Set, Coeff>& a,
                            const Series<Set, Coeff>& b) {
  requireCompatible(a, b);
  const Set& set = a.indexSet();
  const std::size_t count = set.size();
  Series<Set, Coeff> out(a.indexSetPtr(), a.shape());

  std::vector<Coeff> values(count, a.shape().zero());
  std::vector<char> present(count, 0);
  parallelFor(count, [&](std::size_t pos) {
    const auto idx = set.indexAt(pos);
    Coeff acc = a.shape().zero();
    bool any = false;
    const auto& pairs = set.decompositions(idx);
    for (const auto& [i1, i2] : pairs) {
      if (!a.has(i1) || !b.has(i2)) continue;
      acc = acc + a.at(i1) * b.at(i2);
      any = true;
    }
    if (any) {
      values[pos] = std::move(acc);
      present[pos] = 1;
    }
  });
  for (std::size_t pos = 0; pos < count; ++pos)
    if (present[pos]) out.set(set.indexAt(pos), std::move(values[pos]));
  return out;
}

/// Pointwise value f(s) = sum f_lambda e^{-lambda s}. The scalar acts
/// centrally over C and BC; over H it multiplies on the right through the
/// distinguished slice unit, matching the written coefficient order.
template <class Set, class Coeff>
Coeff evaluate(const Series<Set, Coeff>& f, const HalfPlanePoint& at) {
  Coeff acc = f.shape().zero();
  const Complex s = at.s();
  for (const auto& [idx, v] : f.coefficients())
    acc = acc + scalarAction(v, detail::expFactor(idx, s));
  return acc;
}

/// Weighted l^1 norm: sum of coefficient norms times omega, using the
/// default coefficient norm (entrywise one-norm for matrices).
template <class Set, class Coeff>
double weightedNorm(const Series<Set, Coeff>& f, const Weight& w) {
  double sum = 0.0;
  for (const auto& [idx, v] : f.coefficients())
    sum += coeffNorm(v) * evaluate(w, idx);
  return sum;
}

/// Applies the involution to every coefficient. Only available over C and
/// matrices over C, where it is the coefficientwise complex conjugation.
template <class Set, class Coeff>
Series<Set, Coeff> conjugateCoefficients(const Series<Set, Coeff>& f) {
  static_assert(std::is_same_v<Coeff, Complex> ||
                    std::is_same_v<Coeff, Matrix<Complex>>,
                "coefficient conjugation is defined over C only");
  Series<Set, Coeff> out(f.indexSetPtr(), f.shape());
  for (const auto& [idx, v] : f.coefficients()) out.set(idx, involution(v));
  return out;
}

/// max over the union support of coeffNorm(a - b); the test metric.
template <class Set, class Coeff>
double maxCoefficientDistance(const Series<Set, Coeff>& a,
                              const Series<Set, Coeff>& b) {
  requireCompatible(a, b);
  double worst = 0.0;
  for (const auto& [idx, v] : a.coefficients())
    worst = std::max(worst, coeffNorm(v - b.at(idx)));
  for (const auto& [idx, v] : b.coefficients())
    if (!a.has(idx)) worst = std::max(worst, coeffNorm(v));
  return worst;
}

}  // namespace dirichlet

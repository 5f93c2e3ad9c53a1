#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet {

/// Square d x d matrix over one of the scalar algebras, row-major storage.
/// All entries share the scalar kind; operations on matrices of different
/// dimension throw DescriptorMismatch.
template <class S>
class Matrix {
public:
  Matrix() : dim_(0) {}

  explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim, S{}) {
    if (dim == 0) throw Error("matrix dimension must be positive");
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = CoeffShape<S>{}.one();
    return m;
  }

  std::size_t dim() const { return dim_; }

  S& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    requireSameDim(a, b);
    Matrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      out.entries_[i] = a.entries_[i] + b.entries_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    requireSameDim(a, b);
    Matrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      out.entries_[i] = a.entries_[i] - b.entries_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      out.entries_[i] = -a.entries_[i];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    requireSameDim(a, b);
    const std::size_t d = a.dim_;
    Matrix out(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        S acc{};
        for (std::size_t k = 0; k < d; ++k) acc = acc + a(i, k) * b(k, j);
        out(i, j) = acc;
      }
    return out;
  }
  friend Matrix operator*(double s, const Matrix& a) {
    Matrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      out.entries_[i] = s * a.entries_[i];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.dim_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.dim_; ++j)
        os << (j ? ", " : "") << m(i, j);
    }
    return os << "]";
  }

private:
  static void requireSameDim(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_)
      throw DescriptorMismatch("matrix dimension mismatch: " +
                               std::to_string(a.dim_) + " vs " +
                               std::to_string(b.dim_));
  }

  std::size_t dim_;
  std::vector<S> entries_;
};

template <class S>
struct CoeffShape<Matrix<S>> {
  std::size_t dim = 1;
  Matrix<S> zero() const { return Matrix<S>(dim); }
  Matrix<S> one() const { return Matrix<S>::identity(dim); }
  friend bool operator==(const CoeffShape& a, const CoeffShape& b) {
    return a.dim == b.dim;
  }
};

template <class S>
CoeffShape<Matrix<S>> shapeOf(const Matrix<S>& m) {
  return CoeffShape<Matrix<S>>{m.dim()};
}

/// Entrywise one-norm, the default norm inside weighted l^1 sums. Exact and
/// submultiplicative, and equivalent to the operator norm in fixed dimension.
template <class S>
double coeffNorm(const Matrix<S>& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) sum += coeffNorm(m(i, j));
  return sum;
}

/// Entrywise involution; no transpose.
template <class S>
Matrix<S> involution(const Matrix<S>& m) {
  Matrix<S> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = involution(m(i, j));
  return out;
}

template <class S>
Matrix<S> scalarAction(const Matrix<S>& m, const Complex& c) {
  Matrix<S> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out(i, j) = scalarAction(m(i, j), c);
  return out;
}

// ---------------------------------------------------------------------------
// Complex matrix numerics
// ---------------------------------------------------------------------------

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// The complex off-diagonal entry is reduced to the real symmetric case by a
/// phase factor before the classic 2x2 rotation.
inline std::vector<double> hermitianEigenvalues(Matrix<Complex> h) {
  const std::size_t d = h.dim();
  if (d == 1) return {h(0, 0).real()};
  const int maxSweeps = 100;
  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
      diag += std::norm(h(p, p));
      for (std::size_t q = p + 1; q < d; ++q) off += std::norm(h(p, q));
    }
    if (off <= 1e-28 * (diag + 1e-300)) break;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex hpq = h(p, q);
        const double m = std::abs(hpq);
        if (m < 1e-300) continue;
        const Complex phase = hpq / m;  // e^{i phi}
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * m);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // u = diag(sqrt(phase), conj(sqrt(phase))) * [[c, s], [-s, c]]
        const Complex half = std::sqrt(phase);
        const Complex upp = c * half, upq = s * half;
        const Complex uqp = -s * std::conj(half), uqq = c * std::conj(half);
        for (std::size_t i = 0; i < d; ++i) {  // h <- h * u
          const Complex hip = h(i, p), hiq = h(i, q);
          h(i, p) = hip * upp + hiq * uqp;
          h(i, q) = hip * upq + hiq * uqq;
        }
        for (std::size_t j = 0; j < d; ++j) {  // h <- u^H * h
          const Complex hpj = h(p, j), hqj = h(q, j);
          h(p, j) = std::conj(upp) * hpj + std::conj(uqp) * hqj;
          h(q, j) = std::conj(upq) * hpj + std::conj(uqq) * hqj;
        }
        h(p, q) = Complex(0, 0);
        h(q, p) = Complex(0, 0);
      }
    }
  }
  std::vector<double> eigs(d);
  for (std::size_t i = 0; i < d; ++i) eigs[i] = h(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

inline Matrix<Complex> gramMatrix(const Matrix<Complex>& a) {
  const std::size_t d = a.dim();
  Matrix<Complex> g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc(0, 0);
      for (std::size_t k = 0; k < d; ++k)
        acc += std::conj(a(k, i)) * a(k, j);
      g(i, j) = acc;
    }
  return g;
}

/// Singular values ascending, via the Hermitian spectrum of A^H A.
inline std::vector<double> singularValues(const Matrix<Complex>& a) {
  std::vector<double> eigs = hermitianEigenvalues(gramMatrix(a));
  for (double& e : eigs) e = std::sqrt(std::max(0.0, e));
  return eigs;
}

inline double smallestSingularValue(const Matrix<Complex>& a) {
  return singularValues(a).front();
}

/// Operator norm: power iteration on the Gram matrix, relative tolerance
/// 1e-10, iteration cap 10000. The start vector comes from a fixed-seed
/// generator so the result is reproducible.
inline double operatorNorm(const Matrix<Complex>& a) {
  const std::size_t d = a.dim();
  const Matrix<Complex> g = gramMatrix(a);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Complex> v(d);
  for (auto& x : v) x = Complex(dist(rng), dist(rng));
  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<Complex> gv(d, Complex(0, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) gv[i] += g(i, j) * v[j];
    double nrm = 0.0;
    for (const auto& x : gv) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    for (auto& x : gv) x /= nrm;
    Complex rayleigh(0, 0);
    for (std::size_t i = 0; i < d; ++i) {
      Complex gi(0, 0);
      for (std::size_t j = 0; j < d; ++j) gi += g(i, j) * gv[j];
      rayleigh += std::conj(gv[i]) * gi;
    }
    const double next = rayleigh.real();
    v = std::move(gv);
    if (iter > 0 && std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

/// Determinant by LU with partial pivoting.
inline Complex determinant(Matrix<Complex> a) {
  const std::size_t d = a.dim();
  Complex det(1, 0);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    if (std::abs(a(pivot, c)) == 0.0) return Complex(0, 0);
    if (pivot != c) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a(c, j), a(pivot, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < d; ++r) {
      const Complex factor = a(r, c) / a(c, c);
      for (std::size_t j = c; j < d; ++j) a(r, j) -= factor * a(c, j);
    }
  }
  return det;
}

inline double algebraNorm(const Matrix<Complex>& m) { return operatorNorm(m); }

/// Row-pivoted Gauss-Jordan inverse. Declines when the smallest singular
/// value falls below the relative invertibility threshold.
inline std::optional<Matrix<Complex>> tryInverse(const Matrix<Complex>& m) {
  const double n = coeffNorm(m);
  if (n == 0.0 || smallestSingularValue(m) < kInvertibilityTol * n)
    return std::nullopt;
  const std::size_t d = m.dim();
  Matrix<Complex> a = m;
  Matrix<Complex> inv = Matrix<Complex>::identity(d);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    if (std::abs(a(pivot, c)) == 0.0) return std::nullopt;
    if (pivot != c)
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a(c, j), a(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    const Complex scale = 1.0 / a(c, c);
    for (std::size_t j = 0; j < d; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const Complex factor = a(r, c);
      if (factor == Complex(0, 0)) continue;
      for (std::size_t j = 0; j < d; ++j) {
        a(r, j) -= factor * a(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Bicomplex matrices: idempotent components are complex matrices
// ---------------------------------------------------------------------------

inline std::pair<Matrix<Complex>, Matrix<Complex>> idempotentComponents(
    const Matrix<Bicomplex>& m) {
  Matrix<Complex> m1(m.dim()), m2(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      m1(i, j) = m(i, j).l1;
      m2(i, j) = m(i, j).l2;
    }
  return {m1, m2};
}

inline Matrix<Bicomplex> idempotentJoin(const Matrix<Complex>& m1,
                                        const Matrix<Complex>& m2) {
  if (m1.dim() != m2.dim())
    throw DescriptorMismatch("idempotent component dimension mismatch");
  Matrix<Bicomplex> out(m1.dim());
  for (std::size_t i = 0; i < m1.dim(); ++i)
    for (std::size_t j = 0; j < m1.dim(); ++j)
      out(i, j) = Bicomplex(m1(i, j), m2(i, j));
  return out;
}

inline double algebraNorm(const Matrix<Bicomplex>& m) {
  const auto [m1, m2] = idempotentComponents(m);
  return operatorNorm(m1) + operatorNorm(m2);
}

/// Componentwise inverse in the idempotent coordinates; fails on either
/// singular component (the zero-divisor directions of BC).
inline std::optional<Matrix<Bicomplex>> tryInverse(const Matrix<Bicomplex>& m) {
  const auto [m1, m2] = idempotentComponents(m);
  const auto inv1 = tryInverse(m1);
  if (!inv1) return std::nullopt;
  const auto inv2 = tryInverse(m2);
  if (!inv2) return std::nullopt;
  return idempotentJoin(*inv1, *inv2);
}

// ---------------------------------------------------------------------------
// Quaternion matrices: slice decomposition and the complex adjoint embedding
// ---------------------------------------------------------------------------

inline std::pair<Matrix<Complex>, Matrix<Complex>> sliceSplit(
    const Matrix<Quaternion>& m) {
  Matrix<Complex> a(m.dim()), b(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      a(i, j) = m(i, j).sliceA();
      b(i, j) = m(i, j).sliceB();
    }
  return {a, b};
}

inline Matrix<Quaternion> sliceJoin(const Matrix<Complex>& a,
                                    const Matrix<Complex>& b) {
  if (a.dim() != b.dim())
    throw DescriptorMismatch("slice component dimension mismatch");
  Matrix<Quaternion> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out(i, j) = Quaternion::fromSlice(a(i, j), b(i, j));
  return out;
}

/// M = Z + W*l maps to the 2d x 2d block matrix [[Z, W], [-conj(W), conj(Z)]].
/// The map is unital and multiplicative, and M is invertible iff its
/// embedding is.
inline Matrix<Complex> adjointEmbed(const Matrix<Quaternion>& m) {
  const auto [z, w] = sliceSplit(m);
  const std::size_t d = m.dim();
  Matrix<Complex> out(2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      out(i, j) = z(i, j);
      out(i, d + j) = w(i, j);
      out(d + i, j) = -std::conj(w(i, j));
      out(d + i, d + j) = std::conj(z(i, j));
    }
  return out;
}

/// Largest deviation of a 2d x 2d complex matrix from the adjoint embedding
/// image; 0 means the matrix is exactly of the form [[Z,W],[-conj(W),conj(Z)]].
inline double adjointStructureDefect(const Matrix<Complex>& m) {
  if (m.dim() % 2 != 0) throw Error("adjoint image requires even dimension");
  const std::size_t d = m.dim() / 2;
  double defect = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      defect = std::max(defect,
                        std::abs(m(d + i, d + j) - std::conj(m(i, j))));
      defect = std::max(defect,
                        std::abs(m(d + i, j) + std::conj(m(i, d + j))));
    }
  return defect;
}

/// Inverse of adjointEmbed on its image; reads the Z and W blocks.
inline Matrix<Quaternion> adjointExtract(const Matrix<Complex>& m) {
  if (m.dim() % 2 != 0) throw Error("adjoint image requires even dimension");
  const std::size_t d = m.dim() / 2;
  Matrix<Complex> z(d), w(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      z(i, j) = m(i, j);
      w(i, j) = m(i, d + j);
    }
  return sliceJoin(z, w);
}

inline double algebraNorm(const Matrix<Quaternion>& m) {
  return operatorNorm(adjointEmbed(m));
}

/// Gaussian elimination over the division ring H. Pivot = largest quaternion
/// norm in the column, ties broken by lowest row index; all row operations
/// multiply on the left so noncommutativity is respected.
inline std::optional<Matrix<Quaternion>> tryInverse(
    const Matrix<Quaternion>& m) {
  const double n = coeffNorm(m);
  if (n == 0.0 ||
      smallestSingularValue(adjointEmbed(m)) < kInvertibilityTol * n)
    return std::nullopt;
  const std::size_t d = m.dim();
  Matrix<Quaternion> a = m;
  Matrix<Quaternion> inv = Matrix<Quaternion>::identity(d);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (coeffNorm(a(r, c)) > coeffNorm(a(pivot, c))) pivot = r;
    const auto pivotInv = tryInverse(a(pivot, c));
    if (!pivotInv) return std::nullopt;
    if (pivot != c)
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a(c, j), a(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    for (std::size_t j = 0; j < d; ++j) {
      a(c, j) = *pivotInv * a(c, j);
      inv(c, j) = *pivotInv * inv(c, j);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const Quaternion factor = a(r, c);
      if (coeffNorm(factor) == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        a(r, j) = a(r, j) - factor * a(c, j);
        inv(r, j) = inv(r, j) - factor * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace dirichlet

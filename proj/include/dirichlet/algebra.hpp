#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <utility>

namespace dirichlet {

using Complex = std::complex<double>;

/// Relative threshold below which a value counts as not invertible: the
/// smallest-singular-value proxy is compared against tau * norm(a).
inline constexpr double kInvertibilityTol = 1e-12;

// ---------------------------------------------------------------------------
// Complex scalars
// ---------------------------------------------------------------------------

inline double coeffNorm(const Complex& v) { return std::abs(v); }
inline double algebraNorm(const Complex& v) { return std::abs(v); }
inline Complex involution(const Complex& v) { return std::conj(v); }

inline std::optional<Complex> tryInverse(const Complex& v) {
  if (std::abs(v) == 0.0) return std::nullopt;
  return 1.0 / v;
}

/// Action of the evaluation scalar e^{-lambda s}; central over C.
inline Complex scalarAction(const Complex& v, const Complex& c) { return v * c; }

// ---------------------------------------------------------------------------
// Bicomplex numbers
// ---------------------------------------------------------------------------

/// Bicomplex number stored in idempotent coordinates: Z = l1*e1 + l2*e2,
/// where e1 = (1+k)/2, e2 = (1-k)/2 and k = ij is the hyperbolic unit.
/// Storage is idempotent because both ring operations are componentwise
/// there; the cartesian pair (z1, z2) with Z = z1 + j*z2 is a view.
struct Bicomplex {
  Complex l1{0.0, 0.0};
  Complex l2{0.0, 0.0};

  Bicomplex() = default;
  Bicomplex(Complex c1, Complex c2) : l1(c1), l2(c2) {}

  static Bicomplex fromCartesian(Complex z1, Complex z2) {
    const Complex i(0.0, 1.0);
    return Bicomplex(z1 - i * z2, z1 + i * z2);
  }
  Complex cart1() const { return (l1 + l2) / 2.0; }
  Complex cart2() const { return Complex(0.0, 1.0) * (l1 - l2) / 2.0; }

  static Bicomplex one() { return Bicomplex(1.0, 1.0); }
  static Bicomplex idempotent1() { return Bicomplex(1.0, 0.0); }
  static Bicomplex idempotent2() { return Bicomplex(0.0, 1.0); }
  static Bicomplex hyperbolicUnit() { return Bicomplex(1.0, -1.0); }

  friend Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
    return Bicomplex(a.l1 + b.l1, a.l2 + b.l2);
  }
  friend Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
    return Bicomplex(a.l1 - b.l1, a.l2 - b.l2);
  }
  friend Bicomplex operator-(const Bicomplex& a) {
    return Bicomplex(-a.l1, -a.l2);
  }
  friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
    return Bicomplex(a.l1 * b.l1, a.l2 * b.l2);
  }
  friend Bicomplex operator*(double s, const Bicomplex& a) {
    return Bicomplex(s * a.l1, s * a.l2);
  }
  friend bool operator==(const Bicomplex& a, const Bicomplex& b) {
    return a.l1 == b.l1 && a.l2 == b.l2;
  }

  friend std::ostream& operator<<(std::ostream& os, const Bicomplex& z) {
    return os << "[" << z.l1 << "]e1 + [" << z.l2 << "]e2";
  }
};

/// Dual Lie norm |l1| + |l2|.
inline double coeffNorm(const Bicomplex& v) {
  return std::abs(v.l1) + std::abs(v.l2);
}
inline double algebraNorm(const Bicomplex& v) { return coeffNorm(v); }

inline Bicomplex involution(const Bicomplex& v) {
  return Bicomplex(std::conj(v.l1), std::conj(v.l2));
}

inline std::optional<Bicomplex> tryInverse(const Bicomplex& v) {
  const double proxy = std::min(std::abs(v.l1), std::abs(v.l2));
  const double n = coeffNorm(v);
  if (n == 0.0 || proxy < kInvertibilityTol * n) return std::nullopt;
  return Bicomplex(1.0 / v.l1, 1.0 / v.l2);
}

/// C = C_i is central in BC: the scalar acts on both idempotent components.
inline Bicomplex scalarAction(const Bicomplex& v, const Complex& c) {
  return Bicomplex(v.l1 * c, v.l2 * c);
}

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

/// Quaternion w + x*e1 + y*e2 + z*e3 with e1^2 = e2^2 = e3^2 = e1 e2 e3 = -1.
/// The distinguished slice basis is i := e1, l := e2, so a quaternion splits
/// uniquely as A + B*l with A, B in C_i; the conjugation rule l*c = conj(c)*l
/// drives the inversion formulas.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static Quaternion one() { return Quaternion(1, 0, 0, 0); }
  static Quaternion e1() { return Quaternion(0, 1, 0, 0); }
  static Quaternion e2() { return Quaternion(0, 0, 1, 0); }
  static Quaternion e3() { return Quaternion(0, 0, 0, 1); }

  /// Unique decomposition q = A + B*l over the distinguished basis.
  static Quaternion fromSlice(Complex a, Complex b) {
    return Quaternion(a.real(), a.imag(), b.real(), b.imag());
  }
  Complex sliceA() const { return Complex(w, x); }
  Complex sliceB() const { return Complex(y, z); }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z);
  }
  friend Quaternion operator-(const Quaternion& a) {
    return Quaternion(-a.w, -a.x, -a.y, -a.z);
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
  }
  friend Quaternion operator*(double s, const Quaternion& a) {
    return Quaternion(s * a.w, s * a.x, s * a.y, s * a.z);
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << q.w << " + " << q.x << "e1 + " << q.y << "e2 + " << q.z
              << "e3";
  }
};

inline double coeffNorm(const Quaternion& v) {
  return std::sqrt(v.w * v.w + v.x * v.x + v.y * v.y + v.z * v.z);
}
inline double algebraNorm(const Quaternion& v) { return coeffNorm(v); }

inline Quaternion involution(const Quaternion& v) {
  return Quaternion(v.w, -v.x, -v.y, -v.z);
}

inline std::optional<Quaternion> tryInverse(const Quaternion& v) {
  const double n2 = v.w * v.w + v.x * v.x + v.y * v.y + v.z * v.z;
  if (n2 == 0.0) return std::nullopt;
  return (1.0 / n2) * involution(v);
}

/// The evaluation scalar is not central over H; it multiplies on the RIGHT,
/// embedded through the distinguished i = e1, matching the written order
/// f_lambda e^{-lambda s}.
inline Quaternion scalarAction(const Quaternion& v, const Complex& c) {
  return v * Quaternion(c.real(), c.imag(), 0.0, 0.0);
}

// ---------------------------------------------------------------------------
// Shape witnesses
// ---------------------------------------------------------------------------

/// Carries whatever runtime data is needed to materialize the zero and unit
/// of a coefficient type. Scalars need none; Matrix<S> specializes this with
/// its dimension.
template <class Coeff>
struct CoeffShape {
  Coeff zero() const { return Coeff{}; }
  Coeff one() const { return oneImpl(static_cast<Coeff*>(nullptr)); }
  friend bool operator==(const CoeffShape&, const CoeffShape&) { return true; }

private:
  static Complex oneImpl(Complex*) { return Complex(1.0, 0.0); }
  static Bicomplex oneImpl(Bicomplex*) { return Bicomplex::one(); }
  static Quaternion oneImpl(Quaternion*) { return Quaternion::one(); }
};

template <class Coeff>
CoeffShape<Coeff> shapeOf(const Coeff&) {
  return CoeffShape<Coeff>{};
}

}  // namespace dirichlet

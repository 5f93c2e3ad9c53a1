#pragma once

#include <stdexcept>
#include <string>

namespace dirichlet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two values from different coefficient algebras were combined.
class DescriptorMismatch : public Error {
public:
  explicit DescriptorMismatch(const std::string& what) : Error(what) {}
};

/// A series file or inline fragment violated the schema.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// The unit-index coefficient has no inverse in its algebra.
class NotInvertibleConstantTerm : public Error {
public:
  explicit NotInvertibleConstantTerm(const std::string& what) : Error(what) {}
};

/// The Neumann contraction ratio was >= 1. Inconclusive: the series may
/// still be invertible far beyond the contraction regime.
class NeumannNotContractive : public Error {
public:
  NeumannNotContractive(const std::string& what, double ratio)
      : Error(what), ratio_(ratio) {}
  double ratio() const { return ratio_; }

private:
  double ratio_;
};

/// Semigroup enumeration exceeded the element-count cap.
class ExplosionError : public Error {
public:
  explicit ExplosionError(const std::string& what) : Error(what) {}
};

/// Requested adjugate inversion for a matrix dimension above the Leibniz cap.
class DimensionTooLarge : public Error {
public:
  explicit DimensionTooLarge(const std::string& what) : Error(what) {}
};

/// A computed matrix left the structured image it must lie in; signals a
/// numerical fault rather than a property of the input.
class StructureViolation : public Error {
public:
  explicit StructureViolation(const std::string& what) : Error(what) {}
};

/// An operation was requested on an index set it is not defined for.
class UnsupportedIndexSet : public Error {
public:
  explicit UnsupportedIndexSet(const std::string& what) : Error(what) {}
};

}  // namespace dirichlet

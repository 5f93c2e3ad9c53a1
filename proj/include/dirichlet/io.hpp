#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/invert.hpp"
#include "dirichlet/margin.hpp"
#include "dirichlet/matrix.hpp"
#include "dirichlet/semigroup.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/weights.hpp"

namespace dirichlet {

enum class ScalarKind { complex, bicomplex, quaternion };

/// Runtime descriptor of a coefficient algebra: scalar kind plus matrix
/// dimension (0 = scalar).
struct AlgebraDescriptor {
  ScalarKind scalar = ScalarKind::complex;
  std::size_t matrixDim = 0;

  friend bool operator==(const AlgebraDescriptor& a,
                         const AlgebraDescriptor& b) {
    return a.scalar == b.scalar && a.matrixDim == b.matrixDim;
  }
};

/// Dynamic series value covering every (index set, coefficient) combination
/// the file format can describe.
using AnySeries = std::variant<Series<OrdinaryIndexSet, Complex>,
                               Series<OrdinaryIndexSet, Bicomplex>,
                               Series<OrdinaryIndexSet, Quaternion>,
                               Series<OrdinaryIndexSet, Matrix<Complex>>,
                               Series<OrdinaryIndexSet, Matrix<Bicomplex>>,
                               Series<OrdinaryIndexSet, Matrix<Quaternion>>,
                               Series<GeneratedSemigroup, Complex>,
                               Series<GeneratedSemigroup, Bicomplex>,
                               Series<GeneratedSemigroup, Quaternion>,
                               Series<GeneratedSemigroup, Matrix<Complex>>,
                               Series<GeneratedSemigroup, Matrix<Bicomplex>>,
                               Series<GeneratedSemigroup, Matrix<Quaternion>>>;

namespace io {

using json = nlohmann::json;

namespace detail {

inline void requireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
}

/// Strict field policy: every present key must be known.
inline void rejectUnknown(const json& j, std::set<std::string> allowed,
                          const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ParseError(where + ": unknown field \"" + key + "\"");
}

inline const json& field(const json& j, const std::string& key,
                         const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline double finiteNumber(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite number");
  return v;
}

inline std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalar encodings
// ---------------------------------------------------------------------------

inline json toJson(const Complex& v) { return json::array({v.real(), v.imag()}); }

inline json toJson(const Bicomplex& v) {
  return json{{"idem", json::array({toJson(v.l1), toJson(v.l2)})}};
}

inline json toJson(const Quaternion& v) {
  return json::array({v.w, v.x, v.y, v.z});
}

template <class S>
json toJson(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(toJson(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complexFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(where + ": complex value must be [re, im]");
  return Complex(detail::finiteNumber(j[0], where),
                 detail::finiteNumber(j[1], where));
}

inline Bicomplex bicomplexFromJson(const json& j, const std::string& where) {
  detail::requireObject(j, where);
  detail::rejectUnknown(j, {"idem", "cart"}, where);
  const bool idem = j.contains("idem");
  const bool cart = j.contains("cart");
  if (idem == cart)
    throw ParseError(where + ": bicomplex value needs exactly one of \"idem\", \"cart\"");
  const json& pair = idem ? j["idem"] : j["cart"];
  if (!pair.is_array() || pair.size() != 2)
    throw ParseError(where + ": bicomplex components must be a pair");
  const Complex c1 = complexFromJson(pair[0], where);
  const Complex c2 = complexFromJson(pair[1], where);
  return idem ? Bicomplex(c1, c2) : Bicomplex::fromCartesian(c1, c2);
}

inline Quaternion quaternionFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(where + ": quaternion value must be [x0, x1, x2, x3]");
  return Quaternion(
      detail::finiteNumber(j[0], where), detail::finiteNumber(j[1], where),
      detail::finiteNumber(j[2], where), detail::finiteNumber(j[3], where));
}

template <class S>
Matrix<S> matrixFromJson(const json& j, std::size_t dim,
                         S (*scalarParse)(const json&, const std::string&),
                         const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError(where + ": matrix must have " + std::to_string(dim) +
                     " rows");
  Matrix<S> m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim)
      throw ParseError(where + ": matrix row " + std::to_string(r) +
                       " must have " + std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = scalarParse(j[r][c], where);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Semigroup / algebra / weight fragments
// ---------------------------------------------------------------------------

using AnyIndexSet = std::variant<std::shared_ptr<const OrdinaryIndexSet>,
                                 std::shared_ptr<const GeneratedSemigroup>>;

inline AnyIndexSet indexSetFromJson(const json& j) {
  detail::requireObject(j, "semigroup");
  const std::string type =
      detail::field(j, "type", "semigroup").get<std::string>();
  if (type == "ordinary") {
    detail::rejectUnknown(j, {"type", "N"}, "semigroup");
    const std::int64_t n = detail::integer(detail::field(j, "N", "semigroup"),
                                           "semigroup.N");
    if (n < 1) throw ParseError("semigroup.N must be >= 1");
    return std::make_shared<const OrdinaryIndexSet>(n);
  }
  if (type == "generated") {
    detail::rejectUnknown(j, {"type", "generators", "horizon"}, "semigroup");
    const json& gens = detail::field(j, "generators", "semigroup");
    if (!gens.is_array() || gens.empty())
      throw ParseError("semigroup.generators must be a non-empty array");
    std::vector<Rational> parsed;
    for (const auto& g : gens) {
      if (!g.is_string())
        throw ParseError("semigroup.generators entries must be \"num/den\" strings");
      parsed.push_back(Rational::parse(g.get<std::string>()));
    }
    const json& hz = detail::field(j, "horizon", "semigroup");
    if (!hz.is_string())
      throw ParseError("semigroup.horizon must be a \"num/den\" string");
    try {
      return std::make_shared<const GeneratedSemigroup>(
          std::move(parsed), Rational::parse(hz.get<std::string>()));
    } catch (const ParseError&) {
      throw;
    } catch (const ExplosionError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("semigroup: ") + e.what());
    }
  }
  throw ParseError("semigroup.type must be \"ordinary\" or \"generated\"");
}

inline json indexSetToJson(const OrdinaryIndexSet& set) {
  return json{{"type", "ordinary"}, {"N", set.truncation()}};
}

inline json indexSetToJson(const GeneratedSemigroup& set) {
  json gens = json::array();
  for (const auto& g : set.generators()) gens.push_back(g.toString());
  return json{{"type", "generated"},
              {"generators", std::move(gens)},
              {"horizon", set.horizon().toString()}};
}

inline AlgebraDescriptor algebraFromJson(const json& j) {
  detail::requireObject(j, "algebra");
  detail::rejectUnknown(j, {"scalar", "matrixDim"}, "algebra");
  const std::string scalar =
      detail::field(j, "scalar", "algebra").get<std::string>();
  AlgebraDescriptor desc;
  if (scalar == "complex")
    desc.scalar = ScalarKind::complex;
  else if (scalar == "bicomplex")
    desc.scalar = ScalarKind::bicomplex;
  else if (scalar == "quaternion")
    desc.scalar = ScalarKind::quaternion;
  else
    throw ParseError("algebra.scalar must be complex, bicomplex or quaternion");
  if (j.contains("matrixDim")) {
    const std::int64_t d = detail::integer(j["matrixDim"], "algebra.matrixDim");
    if (d < 0) throw ParseError("algebra.matrixDim must be >= 0");
    desc.matrixDim = static_cast<std::size_t>(d);
  }
  return desc;
}

inline json algebraToJson(const AlgebraDescriptor& desc) {
  const char* name = desc.scalar == ScalarKind::complex      ? "complex"
                     : desc.scalar == ScalarKind::bicomplex ? "bicomplex"
                                                             : "quaternion";
  json j{{"scalar", name}};
  if (desc.matrixDim > 0) j["matrixDim"] = desc.matrixDim;
  return j;
}

inline std::optional<WeightDomain> weightDomainFromJson(const json& j) {
  if (!j.contains("domain")) return std::nullopt;
  const std::string d = j["domain"].get<std::string>();
  if (d == "additive") return WeightDomain::additive;
  if (d == "multiplicative") return WeightDomain::multiplicative;
  throw ParseError("weight.domain must be \"additive\" or \"multiplicative\"");
}

namespace detail {
Weight weightFromJsonImpl(const json& j);
}

inline Weight weightFromJson(const json& j) {
  try {
    return detail::weightFromJsonImpl(j);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {  // parameter validation from the factories
    throw ParseError(std::string("weight: ") + e.what());
  } catch (const json::exception& e) {  // wrong JSON value types
    throw ParseError(std::string("weight: ") + e.what());
  }
}

inline Weight detail::weightFromJsonImpl(const json& j) {
  detail::requireObject(j, "weight");
  const std::string kind = detail::field(j, "kind", "weight").get<std::string>();
  if (kind == "trivial") {
    detail::rejectUnknown(j, {"kind"}, "weight");
    return Weight::trivial();
  }
  if (kind == "polynomial") {
    detail::rejectUnknown(j, {"kind", "alpha", "domain"}, "weight");
    return Weight::polynomial(
        detail::finiteNumber(detail::field(j, "alpha", "weight"), "weight.alpha"),
        weightDomainFromJson(j));
  }
  if (kind == "subexponential") {
    detail::rejectUnknown(j, {"kind", "beta", "gamma", "domain"}, "weight");
    return Weight::subexponential(
        detail::finiteNumber(detail::field(j, "beta", "weight"), "weight.beta"),
        detail::finiteNumber(detail::field(j, "gamma", "weight"), "weight.gamma"),
        weightDomainFromJson(j));
  }
  if (kind == "exponential") {
    detail::rejectUnknown(j, {"kind", "beta", "domain"}, "weight");
    return Weight::exponential(
        detail::finiteNumber(detail::field(j, "beta", "weight"), "weight.beta"),
        weightDomainFromJson(j));
  }
  if (kind == "table") {
    detail::rejectUnknown(j, {"kind", "domain", "values"}, "weight");
    const auto domain = weightDomainFromJson(j);
    if (!domain) throw ParseError("table weight needs an explicit domain");
    const json& values = detail::field(j, "values", "weight");
    if (!values.is_array()) throw ParseError("weight.values must be an array");
    if (*domain == WeightDomain::multiplicative) {
      std::map<std::int64_t, double> table;
      for (const auto& entry : values) {
        detail::rejectUnknown(entry, {"index", "value"}, "weight.values");
        table[detail::integer(detail::field(entry, "index", "weight.values"),
                              "weight.values.index")] =
            detail::finiteNumber(detail::field(entry, "value", "weight.values"),
                                 "weight.values.value");
      }
      return Weight::tableMultiplicative(std::move(table));
    }
    std::map<Rational, double> table;
    for (const auto& entry : values) {
      detail::rejectUnknown(entry, {"index", "value"}, "weight.values");
      const json& idx = detail::field(entry, "index", "weight.values");
      if (!idx.is_string())
        throw ParseError("additive table indices must be \"num/den\" strings");
      table[Rational::parse(idx.get<std::string>())] =
          detail::finiteNumber(detail::field(entry, "value", "weight.values"),
                               "weight.values.value");
    }
    return Weight::tableAdditive(std::move(table));
  }
  throw ParseError("unknown weight kind \"" + kind + "\"");
}

inline json weightToJson(const Weight& w) {
  json j;
  switch (w.kind()) {
    case WeightKind::trivial:
      j["kind"] = "trivial";
      break;
    case WeightKind::polynomial:
      j["kind"] = "polynomial";
      j["alpha"] = w.alpha();
      break;
    case WeightKind::subexponential:
      j["kind"] = "subexponential";
      j["beta"] = w.beta();
      j["gamma"] = w.gamma();
      break;
    case WeightKind::exponential:
      j["kind"] = "exponential";
      j["beta"] = w.beta();
      break;
    case WeightKind::table: {
      j["kind"] = "table";
      json values = json::array();
      if (w.domain() == WeightDomain::multiplicative) {
        for (const auto& [n, v] : w.multiplicativeTable())
          values.push_back(json{{"index", n}, {"value", v}});
      } else {
        for (const auto& [l, v] : w.additiveTable())
          values.push_back(json{{"index", l.toString()}, {"value", v}});
      }
      j["values"] = std::move(values);
      break;
    }
  }
  if (w.domain())
    j["domain"] = *w.domain() == WeightDomain::additive ? "additive"
                                                        : "multiplicative";
  return j;
}

// ---------------------------------------------------------------------------
// Whole series files
// ---------------------------------------------------------------------------

struct LoadedSeries {
  AnySeries series;
  std::optional<Weight> weight;
};

namespace detail {

template <class Set>
typename Set::Index indexFromJson(const json& j, const Set&,
                                  const std::string& where) {
  if constexpr (std::is_same_v<Set, OrdinaryIndexSet>) {
    return integer(j, where);
  } else {
    if (!j.is_string())
      throw ParseError(where + ": generated indices must be \"num/den\" strings");
    return Rational::parse(j.get<std::string>());
  }
}

inline json indexToJson(std::int64_t n) { return json(n); }
inline json indexToJson(const Rational& r) { return json(r.toString()); }

template <class Set, class Coeff, class ParseFn>
AnySeries buildSeries(std::shared_ptr<const Set> set, CoeffShape<Coeff> shape,
                      const json& coeffs, ParseFn parseValue) {
  Series<Set, Coeff> out(set, shape);
  std::set<typename Set::Index> seen;
  for (const auto& entry : coeffs) {
    requireObject(entry, "coefficients entry");
    rejectUnknown(entry, {"index", "value"}, "coefficients entry");
    const auto idx = indexFromJson(field(entry, "index", "coefficients"),
                                   *set, "coefficients.index");
    if (!seen.insert(idx).second)
      throw ParseError("duplicate coefficient index in series file");
    if (!set->contains(idx))
      throw ParseError("coefficient index outside the truncation window");
    try {
      out.set(idx, parseValue(field(entry, "value", "coefficients")));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("bad coefficient value: ") + e.what());
    }
  }
  return AnySeries(std::move(out));
}

template <class Set>
AnySeries seriesForDescriptor(std::shared_ptr<const Set> set,
                              const AlgebraDescriptor& desc,
                              const json& coeffs) {
  const std::string where = "coefficients.value";
  if (desc.matrixDim == 0) {
    switch (desc.scalar) {
      case ScalarKind::complex:
        return buildSeries<Set, Complex>(set, {}, coeffs, [&](const json& v) {
          return complexFromJson(v, where);
        });
      case ScalarKind::bicomplex:
        return buildSeries<Set, Bicomplex>(set, {}, coeffs, [&](const json& v) {
          return bicomplexFromJson(v, where);
        });
      case ScalarKind::quaternion:
        return buildSeries<Set, Quaternion>(set, {}, coeffs, [&](const json& v) {
          return quaternionFromJson(v, where);
        });
    }
  }
  const std::size_t d = desc.matrixDim;
  switch (desc.scalar) {
    case ScalarKind::complex:
      return buildSeries<Set, Matrix<Complex>>(
          set, {d}, coeffs, [&](const json& v) {
            return matrixFromJson<Complex>(v, d, complexFromJson, where);
          });
    case ScalarKind::bicomplex:
      return buildSeries<Set, Matrix<Bicomplex>>(
          set, {d}, coeffs, [&](const json& v) {
            return matrixFromJson<Bicomplex>(v, d, bicomplexFromJson, where);
          });
    case ScalarKind::quaternion:
      return buildSeries<Set, Matrix<Quaternion>>(
          set, {d}, coeffs, [&](const json& v) {
            return matrixFromJson<Quaternion>(v, d, quaternionFromJson, where);
          });
  }
  throw ParseError("unreachable algebra descriptor");
}

}  // namespace detail

inline LoadedSeries seriesFromJson(const json& j) {
  try {
    detail::requireObject(j, "series");
    detail::rejectUnknown(j, {"semigroup", "algebra", "weight", "coefficients"},
                          "series");
    const AnyIndexSet set =
        indexSetFromJson(detail::field(j, "semigroup", "series"));
    const AlgebraDescriptor desc =
        algebraFromJson(detail::field(j, "algebra", "series"));
    const json& coeffs = detail::field(j, "coefficients", "series");
    if (!coeffs.is_array()) throw ParseError("coefficients must be an array");

    LoadedSeries out{
        std::visit(
            [&](const auto& setPtr) {
              return detail::seriesForDescriptor(setPtr, desc, coeffs);
            },
            set),
        std::nullopt};
    if (j.contains("weight")) out.weight = weightFromJson(j["weight"]);
    return out;
  } catch (const json::exception& e) {  // wrong JSON value types
    throw ParseError(std::string("series: ") + e.what());
  }
}

template <class Set, class Coeff>
AlgebraDescriptor descriptorOf(const Series<Set, Coeff>&) {
  AlgebraDescriptor desc;
  if constexpr (std::is_same_v<Coeff, Complex>)
    desc = {ScalarKind::complex, 0};
  else if constexpr (std::is_same_v<Coeff, Bicomplex>)
    desc = {ScalarKind::bicomplex, 0};
  else if constexpr (std::is_same_v<Coeff, Quaternion>)
    desc = {ScalarKind::quaternion, 0};
  return desc;
}

template <class Set, class S>
AlgebraDescriptor descriptorOf(const Series<Set, Matrix<S>>& f) {
  AlgebraDescriptor desc;
  if constexpr (std::is_same_v<S, Complex>)
    desc.scalar = ScalarKind::complex;
  else if constexpr (std::is_same_v<S, Bicomplex>)
    desc.scalar = ScalarKind::bicomplex;
  else
    desc.scalar = ScalarKind::quaternion;
  desc.matrixDim = f.shape().dim;
  return desc;
}

inline AlgebraDescriptor descriptorOf(const AnySeries& any) {
  return std::visit([](const auto& f) { return descriptorOf(f); }, any);
}

template <class Set, class Coeff>
json seriesToJson(const Series<Set, Coeff>& f,
                  const std::optional<Weight>& weight = std::nullopt) {
  json j;
  j["semigroup"] = indexSetToJson(f.indexSet());
  j["algebra"] = algebraToJson(descriptorOf(f));
  if (weight) j["weight"] = weightToJson(*weight);
  json coeffs = json::array();
  for (const auto& [idx, v] : f.coefficients())
    coeffs.push_back(
        json{{"index", detail::indexToJson(idx)}, {"value", toJson(v)}});
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline json seriesToJson(const AnySeries& any,
                         const std::optional<Weight>& weight = std::nullopt) {
  return std::visit([&](const auto& f) { return seriesToJson(f, weight); }, any);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json certificateToJson(const InversionCertificate& cert) {
  json j{{"method", methodName(cert.method)},
         {"residualLeft", cert.residualLeft},
         {"residualRight", cert.residualRight}};
  if (cert.contractionRatio) j["contractionRatio"] = *cert.contractionRatio;
  if (cert.normBound) j["normBound"] = *cert.normBound;
  return j;
}

inline json marginReportToJson(const MarginReport& report) {
  json j{{"min", report.minValue},
         {"samples", report.samplesEvaluated},
         {"refined", report.refined},
         {"upperBoundOnly", true}};
  if (report.asymptotic) {
    j["argmin"] = json{{"asymptotic", true}};
  } else if (report.argminHalfPlane) {
    j["argmin"] = json{{"j", report.argminHalfPlane->j},
                       {"t", report.argminHalfPlane->t}};
  } else {
    json zs = json::array();
    for (std::size_t i = 0; i < report.argminPolydisc.size(); ++i)
      zs.push_back(json{{"prime", report.primes[i]},
                        {"z", toJson(report.argminPolydisc[i])}});
    j["argmin"] = json{{"polydisc", std::move(zs)}};
  }
  if (report.detModulusAtArgmin) j["detModulus"] = *report.detModulusAtArgmin;
  return j;
}

inline json propertyReportToJson(const PropertyReport& report) {
  json j{{"pass", report.pass},
         {"worst", report.worst},
         {"samples", report.samplesEvaluated}};
  if (!report.note.empty()) j["note"] = report.note;
  if (!report.trajectories.empty()) j["trajectories"] = report.trajectories;
  return j;
}

}  // namespace io
}  // namespace dirichlet

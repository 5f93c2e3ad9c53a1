// Command-line front end: parse series files, dispatch library operations,
// emit human-readable tables or machine-readable JSON.
//
// Exit codes: 0 success, 2 constant term not invertible, 3 Neumann ratio
// >= 1, 4 parse error, 5 verification failure, 1 other errors.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "dirichlet/dirichlet.hpp"

namespace {

using dirichlet::AnySeries;
using dirichlet::Weight;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitNotInvertible = 2;
constexpr int kExitNotContractive = 3;
constexpr int kExitParse = 4;
constexpr int kExitVerification = 5;

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dirichlet::ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw dirichlet::ParseError(path + ": " + e.what());
  }
}

dirichlet::io::LoadedSeries loadSeries(const std::string& path) {
  return dirichlet::io::seriesFromJson(readJsonFile(path));
}

/// --weight accepts "trivial", "polynomial:A", "subexponential:B:G",
/// "exponential:B", inline JSON, or a path to a JSON file.
Weight parseWeightArg(const std::string& text) {
  if (text.empty() || text == "trivial") return Weight::trivial();
  if (text.front() == '{') {
    try {
      return dirichlet::io::weightFromJson(json::parse(text));
    } catch (const json::parse_error& e) {
      throw dirichlet::ParseError(std::string("--weight: ") + e.what());
    }
  }
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    try {
      if (parts[0] == "polynomial" && parts.size() == 2)
        return Weight::polynomial(std::stod(parts[1]));
      if (parts[0] == "subexponential" && parts.size() == 3)
        return Weight::subexponential(std::stod(parts[1]), std::stod(parts[2]));
      if (parts[0] == "exponential" && parts.size() == 2)
        return Weight::exponential(std::stod(parts[1]));
    } catch (const std::exception&) {
      throw dirichlet::ParseError("bad weight shorthand: " + text);
    }
    throw dirichlet::ParseError("bad weight shorthand: " + text);
  }
  return dirichlet::io::weightFromJson(readJsonFile(text));
}

void emit(const json& j, const std::string& outputPath) {
  if (outputPath.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(outputPath);
    if (!out) throw dirichlet::Error("cannot write file: " + outputPath);
    out << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Dynamic dispatch over AnySeries
// ---------------------------------------------------------------------------

template <class F>
auto visitSame(const AnySeries& a, const AnySeries& b, F&& fn) {
  using R = decltype(fn(std::get<0>(a), std::get<0>(a)));
  return std::visit(
      [&](const auto& x, const auto& y) -> R {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>,
                                     std::decay_t<decltype(y)>>) {
          return fn(x, y);
        } else {
          throw dirichlet::DescriptorMismatch(
              "the two series use different semigroup/algebra combinations");
        }
      },
      a, b);
}

struct InvertOutcome {
  AnySeries series;
  dirichlet::InversionCertificate certificate;
};

InvertOutcome invertAny(const AnySeries& any, const std::string& method,
                        const Weight& weight, std::size_t kmax) {
  using namespace dirichlet;
  return std::visit(
      [&](const auto& f) -> InvertOutcome {
        using SeriesT = std::decay_t<decltype(f)>;
        using Coeff = typename SeriesT::Coefficient;

        auto finish = [&](auto g, InversionMethod m) {
          InversionCertificate cert = verifyInverse(f, g);
          cert.method = m;
          return InvertOutcome{AnySeries(std::move(g)), cert};
        };

        if (method == "auto") {
          auto result = invertAuto(f);
          return finish(std::move(result.series), result.method);
        }
        if (method == "recursion")
          return finish(invertDirect(f), InversionMethod::direct);
        if (method == "neumann") {
          auto [g, cert] = invertNeumann(f, weight, kmax);
          return InvertOutcome{AnySeries(std::move(g)), cert};
        }
        if (method == "adjugate") {
          if constexpr (std::is_same_v<Coeff, Matrix<Complex>>)
            return finish(invertMatrixAdjugate(f), InversionMethod::adjugate);
          else
            throw Error("--method adjugate needs complex matrix coefficients");
        }
        if (method == "split") {
          if constexpr (std::is_same_v<Coeff, Bicomplex> ||
                        std::is_same_v<Coeff, Matrix<Bicomplex>>)
            return finish(invertBicomplexSplit(f),
                          InversionMethod::bicomplexSplit);
          else
            throw Error("--method split needs bicomplex coefficients");
        }
        if (method == "slice") {
          if constexpr (std::is_same_v<Coeff, Quaternion>)
            return finish(invertQuaternionSlice(f),
                          InversionMethod::quaternionSlice);
          else
            throw Error("--method slice needs scalar quaternion coefficients");
        }
        if (method == "embed") {
          if constexpr (std::is_same_v<Coeff, Matrix<Quaternion>>)
            return finish(invertQuaternionMatrix(f),
                          InversionMethod::adjointEmbedding);
          else
            throw Error("--method embed needs quaternion matrix coefficients");
        }
        throw Error("unknown inversion method: " + method);
      },
      any);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string format = "table";
  std::string output;
};

int cmdEval(const std::string& file, const std::string& at,
            const CommonFlags& flags) {
  const auto comma = at.find(',');
  if (comma == std::string::npos)
    throw dirichlet::ParseError("--at expects \"j,t\"");
  double j = 0.0, t = 0.0;
  try {
    j = std::stod(at.substr(0, comma));
    t = std::stod(at.substr(comma + 1));
  } catch (const std::exception&) {
    throw dirichlet::ParseError("--at expects \"j,t\": " + at);
  }
  const dirichlet::HalfPlanePoint point(j, t);
  const auto loaded = loadSeries(file);
  const json value = std::visit(
      [&](const auto& f) { return dirichlet::io::toJson(evaluate(f, point)); },
      loaded.series);
  if (flags.format == "json") {
    emit(json{{"j", point.j}, {"t", point.t}, {"value", value}}, flags.output);
  } else {
    std::cout << "f(" << point.j << " + " << point.t << "i) = " << value.dump()
              << "\n";
  }
  return kExitOk;
}

int cmdNorm(const std::string& file, const std::string& weightArg,
            const CommonFlags& flags) {
  const auto loaded = loadSeries(file);
  const Weight weight = !weightArg.empty() ? parseWeightArg(weightArg)
                        : loaded.weight    ? *loaded.weight
                                           : Weight::trivial();
  const double norm = std::visit(
      [&](const auto& f) { return weightedNorm(f, weight); }, loaded.series);
  const std::size_t support = std::visit(
      [](const auto& f) { return f.supportSize(); }, loaded.series);
  if (flags.format == "json") {
    emit(json{{"weightedNorm", norm},
              {"weight", dirichlet::io::weightToJson(weight)},
              {"support", support}},
         flags.output);
  } else {
    std::cout << "weighted norm = " << norm << "  (support " << support
              << ")\n";
  }
  return kExitOk;
}

int cmdConvolve(const std::string& fileA, const std::string& fileB,
                const CommonFlags& flags) {
  const auto a = loadSeries(fileA);
  const auto b = loadSeries(fileB);
  const AnySeries out = visitSame(a.series, b.series,
                                  [](const auto& x, const auto& y) {
                                    return AnySeries(convolve(x, y));
                                  });
  emit(dirichlet::io::seriesToJson(out, a.weight), flags.output);
  return kExitOk;
}

int cmdInvert(const std::string& file, const std::string& method,
              const std::string& weightArg, std::size_t kmax, double tol,
              const CommonFlags& flags) {
  const auto loaded = loadSeries(file);
  const Weight weight = !weightArg.empty() ? parseWeightArg(weightArg)
                        : loaded.weight    ? *loaded.weight
                                           : Weight::trivial();
  const InvertOutcome outcome = invertAny(loaded.series, method, weight, kmax);
  emit(dirichlet::io::seriesToJson(outcome.series, loaded.weight),
       flags.output);
  std::cerr << "certificate: "
            << dirichlet::io::certificateToJson(outcome.certificate).dump()
            << "\n";
  if (!outcome.certificate.withinTolerance(tol)) {
    std::cerr << "self-verification failed at tol " << tol << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmdVerify(const std::string& fileA, const std::string& fileB, double tol,
              const CommonFlags& flags) {
  const auto a = loadSeries(fileA);
  const auto b = loadSeries(fileB);
  dirichlet::InversionCertificate cert = visitSame(
      a.series, b.series,
      [](const auto& x, const auto& y) { return verifyInverse(x, y); });
  json j = dirichlet::io::certificateToJson(cert);
  j["tol"] = tol;
  j["pass"] = cert.withinTolerance(tol);
  if (flags.format == "json") {
    emit(j, flags.output);
  } else {
    std::cout << "residualLeft  = " << cert.residualLeft << "\n"
              << "residualRight = " << cert.residualRight << "\n"
              << (cert.withinTolerance(tol) ? "PASS" : "FAIL") << " at tol "
              << tol << "\n";
  }
  return cert.withinTolerance(tol) ? kExitOk : kExitVerification;
}

int cmdMargin(const std::string& file, const std::string& mode, double jMax,
              double tMax, std::size_t grid, std::size_t iters,
              std::size_t budget, std::size_t seed, const CommonFlags& flags) {
  using namespace dirichlet;
  const auto loaded = loadSeries(file);
  MarginReport report;
  if (mode == "halfplane") {
    report = std::visit(
        [&](const auto& f) { return halfPlaneMargin(f, jMax, tMax, grid, iters); },
        loaded.series);
  } else if (mode == "polydisc") {
    report = std::visit(
        [&](const auto& f) -> MarginReport {
          using SeriesT = std::decay_t<decltype(f)>;
          using Coeff = typename SeriesT::Coefficient;
          if constexpr (std::is_same_v<typename SeriesT::IndexSet,
                                       OrdinaryIndexSet> &&
                        (std::is_same_v<Coeff, Complex> ||
                         std::is_same_v<Coeff, Matrix<Complex>>)) {
            return polydiscMargin(f, budget, iters, seed);
          } else {
            throw UnsupportedIndexSet(
                "polydisc margin needs an ordinary series over C or M_d(C)");
          }
        },
        loaded.series);
  } else {
    throw Error("--mode must be halfplane or polydisc");
  }
  const json j = io::marginReportToJson(report);
  if (flags.format == "json") {
    emit(j, flags.output);
  } else {
    std::cout << "min = " << report.minValue << " (upper bound, "
              << report.samplesEvaluated << " samples)\n"
              << "argmin: " << j["argmin"].dump() << "\n";
  }
  return kExitOk;
}

int cmdWeightsCheck(const std::string& file, const std::string& weightArg,
                    std::size_t samples, int depth,
                    const std::string& lambdaArg, const CommonFlags& flags) {
  using namespace dirichlet;
  std::optional<io::LoadedSeries> loaded;
  if (!file.empty()) loaded = loadSeries(file);
  Weight weight = !weightArg.empty()
                      ? parseWeightArg(weightArg)
                      : (loaded && loaded->weight ? *loaded->weight
                                                  : Weight::trivial());

  PropertyReport submult;
  if (loaded) {
    submult = std::visit(
        [&](const auto& f) {
          return checkSubmultiplicative(weight, f.indexSet(), samples);
        },
        loaded->series);
  } else {
    submult = checkSubmultiplicative(weight, OrdinaryIndexSet(64), samples);
  }

  std::vector<double> lambdas;
  std::stringstream ss(lambdaArg);
  for (std::string part; std::getline(ss, part, ',');)
    lambdas.push_back(std::stod(part));
  PropertyReport admissible = checkAdmissible(weight, lambdas, depth);

  if (flags.format == "json") {
    emit(json{{"weight", io::weightToJson(weight)},
              {"submultiplicative", io::propertyReportToJson(submult)},
              {"admissible", io::propertyReportToJson(admissible)}},
         flags.output);
  } else {
    std::cout << "submultiplicative: " << (submult.pass ? "PASS" : "FAIL")
              << " (worst ratio " << submult.worst << ", "
              << submult.samplesEvaluated << " samples)\n";
    std::cout << "admissible:        " << (admissible.pass ? "PASS" : "FAIL")
              << " (worst estimate " << admissible.worst << ")\n";
  }
  return submult.pass && admissible.pass ? kExitOk : kExitVerification;
}

int cmdDemoMobius() {
  using namespace dirichlet;
  auto set = std::make_shared<const OrdinaryIndexSet>(30);
  Series<OrdinaryIndexSet, Complex> ones(set);
  for (std::int64_t n = 1; n <= 30; ++n) ones.set(n, Complex(1.0, 0.0));
  const auto mu = invertDirect(ones);
  std::cout << "  n  a_n  mu(n)\n";
  for (std::int64_t n = 1; n <= 30; ++n) {
    const long rounded = std::lround(mu.at(n).real());
    std::cout << std::setw(3) << n << "  " << std::setw(3) << 1 << "  "
              << std::setw(5) << rounded << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Arithmetic, inversion, and invertibility margins for truncated "
      "generalized Dirichlet series over C, BC, H, and matrix algebras.\n"
      "Set DIRICHLET_THREADS to cap worker threads."};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string file, fileB, at = "0,0", method = "auto", weightArg, mode =
      "halfplane", lambdaArg = "0.5,1,2,4";
  double tol = 1e-9, jMax = 10.0, tMax = 20.0;
  std::size_t kmax = 1000, grid = 201, iters = 60, budget = 4096, seed = 1,
              samples = 200000;
  int depth = 20;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--format", flags.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--output", flags.output, "write the report/series here");
  };

  auto* evalCmd = app.add_subcommand("eval", "evaluate f(s) at s = j + it");
  evalCmd->add_option("file", file)->required();
  evalCmd->add_option("--at", at, "point \"j,t\"")->required();
  addCommon(evalCmd);

  auto* normCmd = app.add_subcommand("norm", "weighted l1 norm");
  normCmd->add_option("file", file)->required();
  normCmd->add_option("--weight", weightArg, "weight override");
  addCommon(normCmd);

  auto* convCmd = app.add_subcommand("convolve", "Dirichlet convolution A*B");
  convCmd->add_option("fileA", file)->required();
  convCmd->add_option("fileB", fileB)->required();
  addCommon(convCmd);

  auto* invCmd = app.add_subcommand("invert", "invert a series on its window");
  invCmd->add_option("file", file)->required();
  invCmd->add_option("--method", method, "auto|recursion|neumann|adjugate|split|slice|embed")
      ->check(CLI::IsMember({"auto", "recursion", "neumann", "adjugate",
                             "split", "slice", "embed"}));
  invCmd->add_option("--weight", weightArg, "weight for the Neumann bound");
  invCmd->add_option("--kmax", kmax, "Neumann partial-sum cap");
  invCmd->add_option("--tol", tol, "self-verification tolerance");
  addCommon(invCmd);

  auto* verCmd = app.add_subcommand("verify", "check g is the inverse of f");
  verCmd->add_option("fileA", file)->required();
  verCmd->add_option("fileB", fileB)->required();
  verCmd->add_option("--tol", tol, "residual tolerance");
  addCommon(verCmd);

  auto* marCmd = app.add_subcommand("margin", "invertibility margin estimate");
  marCmd->add_option("file", file)->required();
  marCmd->add_option("--mode", mode, "halfplane or polydisc")
      ->check(CLI::IsMember({"halfplane", "polydisc"}));
  marCmd->add_option("--jmax", jMax);
  marCmd->add_option("--tmax", tMax);
  marCmd->add_option("--grid", grid, "grid steps along j");
  marCmd->add_option("--iters", iters, "refinement iterations");
  marCmd->add_option("--budget", budget, "polydisc sample budget");
  marCmd->add_option("--seed", seed, "polydisc sample seed");
  addCommon(marCmd);

  auto* wCmd = app.add_subcommand("weights", "weight property checks");
  auto* wCheck = wCmd->add_subcommand("check", "submultiplicativity + admissibility");
  wCheck->add_option("file", file, "series file providing the index set");
  wCheck->add_option("--weight", weightArg, "weight to check");
  wCheck->add_option("--samples", samples, "pair sample budget");
  wCheck->add_option("--depth", depth, "doubling depth (>= 10)");
  wCheck->add_option("--lambdas", lambdaArg, "comma-separated lambda samples");
  addCommon(wCheck);

  auto* demoCmd = app.add_subcommand("demo", "built-in demonstrations");
  auto* demoMobius = demoCmd->add_subcommand(
      "mobius", "Mobius function via inversion of the all-ones series");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evalCmd->parsed()) return cmdEval(file, at, flags);
    if (normCmd->parsed()) return cmdNorm(file, weightArg, flags);
    if (convCmd->parsed()) return cmdConvolve(file, fileB, flags);
    if (invCmd->parsed())
      return cmdInvert(file, method, weightArg, kmax, tol, flags);
    if (verCmd->parsed()) return cmdVerify(file, fileB, tol, flags);
    if (marCmd->parsed())
      return cmdMargin(file, mode, jMax, tMax, grid, iters, budget, seed, flags);
    if (wCmd->parsed() && wCheck->parsed())
      return cmdWeightsCheck(file, weightArg, samples, depth, lambdaArg, flags);
    if (demoCmd->parsed() && demoMobius->parsed()) return cmdDemoMobius();
    std::cerr << "no command given\n";
    return kExitOther;
  } catch (const dirichlet::NotInvertibleConstantTerm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotInvertible;
  } catch (const dirichlet::NeumannNotContractive& e) {
    std::cerr << "error: " << e.what()
              << " (inconclusive: not a proof of non-invertibility)\n";
    return kExitNotContractive;
  } catch (const dirichlet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dirichlet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

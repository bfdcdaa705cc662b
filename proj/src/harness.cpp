#include "fracmorrey/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

namespace {

using nlohmann::json;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

json pointJson(const Point& p) {
  json out = json::array();
  for (int i = 0; i < p.dim(); ++i) out.push_back(p[i]);
  return out;
}

json gridJson(const LogGrid& g) { return {{"rMin", g.rMin()}, {"rMax", g.rMax()}, {"count", g.size()}}; }

json exponentsJson(const ExponentSet& e) {
  return {{"n", e.n()},   {"alpha", e.alpha()}, {"s", e.s()},       {"p", e.p()},
          {"pi", e.pi()}, {"lambdas", e.lambdas()}, {"q", e.q()}, {"q1", e.q1()},
          {"m", e.m()},   {"regime", toString(e.regime())}};
}

json exponentsJson(const LebesgueExponents& e) {
  return {{"n", e.n()}, {"alpha", e.alpha()}, {"s", e.s()}, {"p", e.p()}, {"q", e.q()},
          {"regime", toString(e.regime())}};
}

json operatorJson(const OperatorConfig& cfg) {
  return {{"kernel", cfg.kernel.label()},
          {"alpha", cfg.alpha},
          {"relTol", cfg.quadrature.relTol},
          {"absTol", cfg.quadrature.absTol},
          {"supGrid", gridJson(cfg.supGrid)}};
}

json symbolsJson(std::span<const Symbol> b) {
  json out = json::array();
  for (const Symbol& s : b) out.push_back(s.label());
  return out;
}

FinalizePolicy policyFrom(const HarnessOptions& options) { return FinalizePolicy{options.stabilityCeiling, {}, {}}; }

void requireAlphaMatch(const OperatorConfig& cfg, int n, double alpha) {
  if (cfg.dim() != n) throw DomainError("operator dimension does not match the exponent set");
  if (std::abs(cfg.alpha - alpha) > 1e-12) throw DomainError("operator alpha does not match the exponent set");
}

/// Smallest radius t with supp f inside B(c, t).
double supportReach(const TestFunction& f, const Point& c) {
  double reach = kInfinity;
  for (const Ball& b : f.support()) reach = std::min(reach, distance(c, b.center()) + b.radius());
  return reach;
}

/// Radii t at which t -> ||f||_{L_p(B(c,t))} may fail to be smooth.
std::vector<double> normKinks(const TestFunction& f, const Point& c) {
  std::vector<double> out;
  const Features& F = f.features();
  for (const Ball& s : F.spheres) {
    const double d = distance(c, s.center());
    out.push_back(d + s.radius());
    if (std::abs(d - s.radius()) > 0.0) out.push_back(std::abs(d - s.radius()));
  }
  for (const Point& p : F.points) out.push_back(distance(c, p));
  for (const Hyperplane& h : F.planes) out.push_back(std::abs(c[h.axis] - h.offset));
  out.erase(std::remove_if(out.begin(), out.end(), [](double t) { return !(t > 0.0); }), out.end());
  std::sort(out.begin(), out.end());
  return out;
}

double lqNormOnBall(const std::function<double(const Point&)>& F, double q, const Ball& ball,
                    const Features& features, const QuadratureSettings& settings) {
  const Ball domain[] = {ball};
  PolarIntegrand integrand;
  integrand.g = [&F, q](const Point& x) { return std::pow(std::abs(F(x)), q); };
  const QuadResult r = integratePolar(ball.center(), ball.dim(), domain, features, integrand, settings);
  return std::pow(std::max(0.0, r.value), 1.0 / q);
}

/// Features of the operator output x -> T f(x): kinks of f and of the symbols.
Features outputFeatures(const TestFunction& f, std::span<const Symbol> b) {
  Features out = f.features();
  for (const Symbol& s : b) out.merge(s.features());
  return out;
}

/// Max over base radii of |ratio(lambda)/ratio(lambda = 1) - 1|.
double dilationSpread(const std::map<double, std::map<double, double>>& byRadius) {
  double spread = 0.0;
  for (const auto& [r, perLambda] : byRadius) {
    const auto ref = perLambda.find(1.0);
    if (ref == perLambda.end() || !(ref->second > 0.0)) continue;
    for (const auto& [lambda, ratio] : perLambda) spread = std::max(spread, std::abs(ratio / ref->second - 1.0));
  }
  return spread;
}

std::vector<Symbol> dilateAll(std::span<const Symbol> b, double lambda) {
  std::vector<Symbol> out;
  out.reserve(b.size());
  for (const Symbol& s : b) out.push_back(lambda == 1.0 ? s : s.dilated(lambda));
  return out;
}

}  // namespace

std::vector<double> lqNormProfile(const std::function<double(const Point&)>& F, double q, const Point& x0,
                                  const LogGrid& grid, const Features& features, const QuadratureSettings& settings) {
  std::vector<double> out(grid.size());
  double accumulated = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Ball domain[] = {Ball(x0, grid[k])};
    Features fk = features;
    const double inner = k == 0 ? 0.0 : grid[k - 1];
    if (k > 0) fk.spheres.push_back(Ball(x0, inner));
    PolarIntegrand integrand;
    integrand.g = [&F, q, &x0, inner](const Point& x) {
      if (distance(x, x0) < inner) return 0.0;
      return std::pow(std::abs(F(x)), q);
    };
    accumulated += std::max(0.0, integratePolar(x0, x0.dim(), domain, fk, integrand, settings).value);
    out[k] = std::pow(accumulated, 1.0 / q);
  }
  return out;
}

std::vector<double> campanatoNorms(std::span<const Symbol> b, const ExponentSet& exps, const Point& x0,
                                   const LogGrid& grid, const QuadratureSettings& settings) {
  if (static_cast<int>(b.size()) != exps.m()) throw DomainError("need exactly m symbols for the exponent set");
  std::vector<double> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.push_back(campanatoNorm(b[i], exps.pi()[i], exps.lambdas()[i], x0, grid, settings).supValue);
  }
  return out;
}

// ---- size condition ----------------------------------------------------------

CheckReport checkSizeCondition(const OperatorConfig& cfg, const TestFunction& f, std::span<const Point> xSamples,
                               const HarnessOptions& options) {
  CheckReport report;
  report.checkName = "checkSizeCondition";
  json xs = json::array();
  for (const Point& x : xSamples) xs.push_back(pointJson(x));
  report.parameters = {{"operator", operatorJson(cfg)}, {"f", f.label()}, {"xSamples", xs},
                       {"tolerance", options.sizeTolerance}};
  for (const Point& x : xSamples) {
    const bool inside = std::all_of(f.support().begin(), f.support().end(),
                                    [&x](const Ball& b) { return distance(x, b.center()) <= b.radius(); });
    if (inside) throw DomainError("checkSizeCondition: sample points must lie outside supp f");
    const double lhs = std::abs(fractionalIntegral(cfg, f, x));
    const double rhs = tTildeMajorant(cfg, f, x);
    report.addSample(lhs, rhs, {{"x", pointJson(x)}});
  }
  finalizeReport(report, FinalizePolicy{kInfinity, 1.0 + options.sizeTolerance, {}});
  return report;
}

CheckReport checkMajorantDomination(const OperatorConfig& cfg, const TestFunction& f, std::span<const Point> xSamples,
                                    const HarnessOptions& options) {
  CheckReport report;
  report.checkName = "checkMajorantDomination";
  json xs = json::array();
  for (const Point& x : xSamples) xs.push_back(pointJson(x));
  const double C = majorantConstant(cfg.dim(), cfg.alpha);
  report.parameters = {{"operator", operatorJson(cfg)}, {"f", f.label()}, {"xSamples", xs},
                       {"tolerance", options.sizeTolerance}, {"majorantConstant", C}};
  bool gridStable = true;
  for (const Point& x : xSamples) {
    const MaximalResult m = fractionalMaximalDetailed(cfg, f, x);
    gridStable = gridStable && m.stable;
    const double rhs = tTildeMajorant(cfg, f.absolute(), x) / C;
    report.addSample(std::max(m.value, m.refinedValue), rhs, {{"x", pointJson(x)}, {"argT", m.argT}});
  }
  if (!gridStable) report.note("maximal function moved by more than 0.5% under sup-grid refinement");
  finalizeReport(report, FinalizePolicy{kInfinity, 1.0 + options.sizeTolerance, {}});
  return report;
}

// ---- Lebesgue boundedness ------------------------------------------------------

CheckReport checkLebesgueBoundedness(const OperatorConfig& cfg, const LebesgueExponents& exps,
                                     std::span<const TestFunction> family, std::span<const double> lambdas,
                                     const HarnessOptions& options) {
  requireAlphaMatch(cfg, exps.n(), exps.alpha());
  const int n = exps.n();
  const double q = exps.q();
  CheckReport report;
  report.checkName = "checkLebesgueBoundedness";
  json names = json::array();
  for (const TestFunction& f : family) names.push_back(f.label());
  report.parameters = {{"operator", operatorJson(cfg)},
                       {"exponents", exponentsJson(exps)},
                       {"family", names},
                       {"lambdas", std::vector<double>(lambdas.begin(), lambdas.end())},
                       {"truncationFactor", options.lebesgueTruncation}};

  const SphereRule rule = sphereRule(n, options.sphereNodes);
  const double kernelNorm = kernelSphereNorm(cfg.kernel, exps.s(), defaultKernelSamples(n), rule);
  report.diagnostics["kernelNorm"] = kernelNorm;

  json perFunction = json::array();
  for (const TestFunction& f : family) {
    std::map<double, std::map<double, double>> ratios;
    double worstFarField = 0.0;
    for (double lambda : lambdas) {
      const TestFunction fl = lambda == 1.0 ? f : f.dilated(lambda);
      const double R = fl.supportRadius();
      if (!std::isfinite(R)) throw DomainError("checkLebesgueBoundedness: f must have compact support");
      const double Rt = options.lebesgueTruncation * R;
      const Point origin = Point::origin(n);
      const double inner = std::pow(
          lqNormOnBall([&](const Point& x) { return fractionalIntegral(cfg, fl, x); }, q, Ball(origin, Rt),
                       fl.features(), options.outer),
          q);
      // Far field: T f(x) ~ Omega(x, x/|x|) |x|^{alpha-n} integral of f.
      std::vector<Ball> support(fl.support().begin(), fl.support().end());
      const double mass =
          integratePolar(origin, n, support, fl.features(), PolarIntegrand{{}, [&fl](const Point& y) { return fl(y); }},
                         options.outer)
              .value;
      const double angular = rule.integrate(
          [&](const Point& theta) { return std::pow(std::abs(cfg.kernel.atDirection(theta * Rt, theta)), q); });
      const double decay = (n - exps.alpha()) * q - n;
      const double farField = std::pow(std::abs(mass), q) * angular * std::pow(Rt, -decay) / decay;
      const double lhs = std::pow(inner + farField, 1.0 / q);
      const double rhs = kernelNorm * lpNormOnBall(fl, exps.p(), Ball(origin, R), options.outer);
      if (inner + farField > 0.0) worstFarField = std::max(worstFarField, farField / (inner + farField));
      report.addSample(lhs, rhs, {{"f", f.label()}, {"lambda", lambda}});
      if (rhs > 0.0) ratios[0.0][lambda] = lhs / rhs;
    }
    perFunction.push_back({{"f", f.label()}, {"dilationSpread", dilationSpread(ratios)},
                           {"farFieldFraction", worstFarField}});
  }
  report.diagnostics["functions"] = perFunction;
  finalizeReport(report, policyFrom(options));
  return report;
}

// ---- kernel shell ---------------------------------------------------------------

CheckReport checkKernelShellBound(const RoughKernel& kernel, double s, std::span<const Point> xSamples,
                                  const LogGrid& tGrid, const Point& x0, const HarnessOptions& options) {
  const int n = kernel.dim();
  CheckReport report;
  report.checkName = "checkKernelShellBound";
  json xs = json::array();
  for (const Point& x : xSamples) xs.push_back(pointJson(x));
  report.parameters = {{"kernel", kernel.label()}, {"s", s}, {"x0", pointJson(x0)}, {"xSamples", xs},
                       {"tGrid", gridJson(tGrid)}};

  std::vector<Point> normSamples = defaultKernelSamples(n);
  normSamples.insert(normSamples.end(), xSamples.begin(), xSamples.end());
  const double norm = kernelSphereNorm(kernel, s, normSamples, sphereRule(n, options.sphereNodes));
  report.diagnostics["kernelNorm"] = norm;

  Features features;
  for (const Point& d : kernel.breakDirections()) features.directions.push_back(-d);
  for (double t : tGrid.nodes()) {
    const Ball domain[] = {Ball(x0, t)};
    for (const Point& x : xSamples) {
      if (!(distance(x, x0) < t)) continue;
      PolarIntegrand integrand;
      integrand.rayFactor = [&](const Point& theta) { return std::pow(std::abs(kernel.atDirection(x, -theta)), s); };
      integrand.g = [](const Point&) { return 1.0; };
      const double lhs = std::pow(integratePolar(x, n, domain, features, integrand, options.outer).value, 1.0 / s);
      const double rhs = norm * std::pow(ballVolume(n, 2.0 * t), 1.0 / s);
      report.addSample(lhs, rhs, {{"t", t}, {"x", pointJson(x)}});
    }
  }
  finalizeReport(report, policyFrom(options));
  return report;
}

// ---- Campanato log estimates ------------------------------------------------------

CheckReport checkCampanato(CampanatoEstimate which, const Symbol& b, double p, double lambda, const Point& x0,
                           const LogGrid& radii, const HarnessOptions& options) {
  const int n = b.dim();
  const char* names[] = {"checkCampanatoA", "checkCampanatoB", "checkCampanatoC"};
  CheckReport report;
  report.checkName = names[static_cast<int>(which)];
  report.parameters = {{"b", b.label()}, {"p", p}, {"lambda", lambda}, {"x0", pointJson(x0)},
                       {"radii", gridJson(radii)}, {"logFactor", "1 + |ln(r1/r2)|"}};

  const QuadratureSettings& qs = options.outer;
  const NormProfile profile = campanatoNorm(b, p, lambda, x0, radii, qs);
  const double bNorm = profile.supValue;
  report.diagnostics["campanatoNorm"] = bNorm;
  report.diagnostics["campanatoProfile"] = profileToJson(profile);
  if (which == CampanatoEstimate::C) report.note("RHS radius r is taken as r1, the radius of B = B(x0, r1)");

  std::vector<double> means(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) means[i] = ballMean(b, Ball(x0, radii[i]), qs);

  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r1 = radii[i];
    const Ball B1(x0, r1);
    const double volume = ballVolume(n, r1);
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double r2 = radii[j];
      const double logFactor = 1.0 + std::abs(std::log(r1 / r2));
      double lhs = 0.0;
      double rhs = 0.0;
      switch (which) {
        case CampanatoEstimate::A:
          lhs = oscillationOnBall(b, p, B1, means[j], qs) * std::pow(volume, -(1.0 + lambda * p) / p);
          rhs = logFactor * bNorm;
          break;
        case CampanatoEstimate::B:
          lhs = std::abs(means[i] - means[j]);
          rhs = logFactor * std::pow(volume, lambda) * bNorm;
          break;
        case CampanatoEstimate::C:
          lhs = oscillationOnBall(b, p, B1, means[i], qs);
          rhs = logFactor * std::pow(r1, n / p + n * lambda) * bNorm;
          break;
      }
      report.addSample(lhs, rhs, {{"r1", r1}, {"r2", r2}});
    }
  }
  FinalizePolicy policy = policyFrom(options);
  policy.groupBy = "r1";
  finalizeReport(report, policy);
  return report;
}

// ---- local estimates ------------------------------------------------------------------

CheckReport checkLocalBoundLemma1(const OperatorConfig& cfg, const LebesgueExponents& exps, const TestFunction& f,
                                  const Point& x0, const LogGrid& rGrid, std::span<const double> lambdas,
                                  const HarnessOptions& options) {
  requireAlphaMatch(cfg, exps.n(), exps.alpha());
  const int n = exps.n();
  const double p = exps.p();
  const double q = exps.q();
  const bool sPrime = exps.regime() == Regime::SPrimeLeq;
  const double prePower = sPrime ? n / q : n / q - n / exps.s();
  const double tailPower = sPrime ? -n / q - 1.0 : n / exps.s() - n / q - 1.0;

  CheckReport report;
  report.checkName = "checkLocalBoundLemma1";
  report.parameters = {{"operator", operatorJson(cfg)},
                       {"exponents", exponentsJson(exps)},
                       {"f", f.label()},
                       {"x0", pointJson(x0)},
                       {"rGrid", gridJson(rGrid)},
                       {"lambdas", std::vector<double>(lambdas.begin(), lambdas.end())},
                       {"rhs", sPrime ? "r^{n/q} int_{2r}^inf t^{-n/q-1} ||f||_{L_p(B(x0,t))} dt"
                                      : "r^{n/q-n/s} int_{2r}^inf t^{n/s-n/q-1} ||f||_{L_p(B(x0,t))} dt"}};

  std::map<double, std::map<double, double>> ratios;
  json split = json::array();
  double worstRefinement = 0.0;
  for (double lambda : lambdas) {
    const TestFunction fl = lambda == 1.0 ? f : f.dilated(lambda);
    const Point c = x0 * (1.0 / lambda);
    const double reach = supportReach(fl, c);
    const std::vector<double> kinks = normKinks(fl, c);
    const Features features = outputFeatures(fl, {});
    auto Tf = [&](const Point& x) { return fractionalIntegral(cfg, fl, x); };
    auto N = [&](double t) { return lpNormOnBall(fl, p, Ball(c, t), options.outer); };

    for (double r : rGrid.nodes()) {
      const double rr = r / lambda;
      const Ball B(c, rr);
      const double lhs = lqNormOnBall(Tf, q, B, features, options.outer);
      const TailIntegral tail = lpTailIntegral(N, 2.0 * rr, rr, 0, tailPower, reach, kinks, options.rhs);
      worstRefinement = std::max(worstRefinement, tail.relativeChange);
      if (!tail.refinementOk) {
        report.warn("tail integral moved " + std::to_string(tail.relativeChange) + " under refinement at r = " +
                    std::to_string(rr));
      }
      const double rhs = std::pow(rr, prePower) * tail.value;
      report.addSample(lhs, rhs, {{"r", r}, {"lambda", lambda}, {"radius", rr}});
      if (rhs > 0.0) ratios[r][lambda] = lhs / rhs;

      if (lambda == 1.0 && rhs > 0.0) {
        // f = f1 + f2 with f1 = f chi_{2B}.
        const Ball B2(c, 2.0 * rr);
        const TestFunction f1 = fl.restrictedTo(B2);
        const TestFunction f2 = fl.excluding(B2);
        const double local = lpNormOnBall(fl, p, B2, options.outer);
        const double t1 = lqNormOnBall([&](const Point& x) { return fractionalIntegral(cfg, f1, x); }, q, B,
                                       features, options.outer);
        const double t2 = lqNormOnBall([&](const Point& x) { return fractionalIntegral(cfg, f2, x); }, q, B,
                                       outputFeatures(f2, {}), options.outer);
        json entry{{"r", rr}, {"nearPart", t1}, {"farPart", t2}};
        entry["nearRatio"] = local > 0.0 ? json(t1 / local) : json(nullptr);
        entry["farRatio"] = t2 / rhs;
        split.push_back(entry);
      }
    }
  }
  report.diagnostics["split"] = split;
  report.diagnostics["dilationSpread"] = dilationSpread(ratios);
  report.diagnostics["tailRefinementChange"] = worstRefinement;
  finalizeReport(report, policyFrom(options));
  return report;
}

CheckReport checkCommutatorBoundLemma2(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                       const TestFunction& f, const Point& x0, const LogGrid& rGrid,
                                       std::span<const double> lambdas, const HarnessOptions& options) {
  requireAlphaMatch(cfg, exps.n(), exps.alpha());
  const int n = exps.n();
  const int m = exps.m();
  const double q1 = exps.q1();
  const bool sPrime = exps.regime() == Regime::SPrimeLeq;
  const double inner = exps.sumLambdas() + exps.sumInversePi() + (sPrime ? 0.0 : 1.0 / exps.s());
  const double prePower = sPrime ? n / q1 : n / q1 - n / exps.s();
  const double tailPower = n * (-1.0 / q1 + inner) - 1.0;

  CheckReport report;
  report.checkName = "checkCommutatorBoundLemma2";
  report.parameters = {{"operator", operatorJson(cfg)},
                       {"exponents", exponentsJson(exps)},
                       {"b", symbolsJson(b)},
                       {"f", f.label()},
                       {"x0", pointJson(x0)},
                       {"rGrid", gridJson(rGrid)},
                       {"lambdas", std::vector<double>(lambdas.begin(), lambdas.end())},
                       {"campanatoGrid", gridJson(options.campanatoGrid)}};

  const std::vector<double> bNorms = campanatoNorms(b, exps, x0, options.campanatoGrid, options.outer);
  report.diagnostics["campanatoNorms"] = bNorms;
  if (std::any_of(bNorms.begin(), bNorms.end(), [](double v) { return v == 0.0; })) {
    report.note("a symbol has zero Campanato norm; the commutator vanishes identically");
    report.note("vacuous");
    finalizeReport(report, policyFrom(options));
    return report;
  }

  std::map<double, std::map<double, double>> ratios;
  double worstRefinement = 0.0;
  for (double lambda : lambdas) {
    const TestFunction fl = lambda == 1.0 ? f : f.dilated(lambda);
    const std::vector<Symbol> bl = dilateAll(b, lambda);
    double normProduct = 1.0;
    for (int i = 0; i < m; ++i) normProduct *= std::pow(lambda, n * exps.lambdas()[i]) * bNorms[i];
    const Point c = x0 * (1.0 / lambda);
    const double reach = supportReach(fl, c);
    const std::vector<double> kinks = normKinks(fl, c);
    const Features features = outputFeatures(fl, bl);
    auto Cf = [&](const Point& x) { return multilinearCommutator(cfg, bl, fl, x); };
    auto N = [&](double t) { return lpNormOnBall(fl, exps.p(), Ball(c, t), options.outer); };

    for (double r : rGrid.nodes()) {
      const double rr = r / lambda;
      const double lhs = lqNormOnBall(Cf, q1, Ball(c, rr), features, options.outer);
      const TailIntegral tail = lpTailIntegral(N, 2.0 * rr, rr, m, tailPower, reach, kinks, options.rhs);
      worstRefinement = std::max(worstRefinement, tail.relativeChange);
      if (!tail.refinementOk) {
        report.warn("tail integral moved " + std::to_string(tail.relativeChange) + " under refinement at r = " +
                    std::to_string(rr));
      }
      const double rhs = normProduct * std::pow(rr, prePower) * tail.value;
      report.addSample(lhs, rhs, {{"r", r}, {"lambda", lambda}, {"radius", rr}});
      if (rhs > 0.0) ratios[r][lambda] = lhs / rhs;
    }
  }
  report.diagnostics["dilationSpread"] = dilationSpread(ratios);
  report.diagnostics["tailRefinementChange"] = worstRefinement;
  finalizeReport(report, policyFrom(options));
  return report;
}

// ---- weight-pair conditions ------------------------------------------------------------

namespace {

struct PairExponents {
  double D;         // power of t in the denominator
  double rhsPower;  // extra r power on the right-hand side
};

PairExponents pairExponents(const ExponentSet& e) {
  const int n = e.n();
  const bool sPrime = e.regime() == Regime::SPrimeLeq;
  const double inner = e.sumLambdas() + e.sumInversePi() + (sPrime ? 0.0 : 1.0 / e.s());
  return {n * (1.0 / e.q1() - inner) + 1.0, sPrime ? 0.0 : n / e.s()};
}

void requireDecades(const LogGrid& grid, double decades, const char* what) {
  if (grid.decades() < decades - 1e-9) {
    throw DomainError(std::string(what) + " must span at least " + std::to_string(decades) + " decades");
  }
}

/// integral_r^inf (1 + ln(t/r))^m E(t) t^{-D} dt, with E either the discrete
/// essinf over (t, inf) of phi1(tau) tau^{n/p} or its pointwise value.
PhiTailResult weightTail(const ExponentSet& e, const PhiWeight& phi1, const Point& x0, double r, double D,
                         bool essinf, const PhiTailScheme& scheme) {
  const double np = e.n() / e.p();
  const int m = e.m();
  const std::vector<double> nodes = tailNodes(r, {}, scheme);
  auto h = [&](double t) { return phi1(x0, t) * std::pow(t, np); };
  if (essinf) {
    std::vector<double> suffixMin(nodes.size());
    suffixMin.back() = h(nodes.back());
    for (std::size_t k = nodes.size() - 1; k-- > 0;) suffixMin[k] = std::min(h(nodes[k]), suffixMin[k + 1]);
    return integrateDecayingTail(
        [&](double t, std::size_t k) {
          return std::pow(1.0 + std::log(t / r), m) * suffixMin[std::min(k + 1, nodes.size() - 1)] * std::pow(t, -D);
        },
        nodes, scheme);
  }
  return integrateDecayingTail(
      [&](double t, std::size_t) { return std::pow(1.0 + std::log(t / r), m) * h(t) * std::pow(t, -D); }, nodes,
      scheme);
}

json weightJson(const PhiWeight& phi) { return {{"label", phi.label()}, {"params", phi.params()}}; }

void addPairSamples(CheckReport& report, const ExponentSet& exps, const PhiWeight& phi1, const PhiWeight& phi2,
                    const Point& x0, const LogGrid& rGrid, bool essinf, const PhiTailScheme& scheme) {
  const PairExponents pe = pairExponents(exps);
  json tails = json::array();
  for (double r : rGrid.nodes()) {
    const PhiTailResult tail = weightTail(exps, phi1, x0, r, pe.D, essinf, scheme);
    tails.push_back({{"r", r},
                     {"truncationRadius", tail.truncationRadius},
                     {"remainder", tail.remainder},
                     {"decayExponent", std::isfinite(tail.decayExponent) ? json(tail.decayExponent) : json("inf")}});
    if (!tail.converged) {
      report.fail("tail integral diverges at r = " + std::to_string(r) + " (local decay exponent " +
                  std::to_string(tail.decayExponent) + ")");
      continue;
    }
    const double rhs = phi2(x0, r) * std::pow(r, pe.rhsPower);
    report.addSample(tail.value, rhs, {{"r", r}});
  }
  report.diagnostics["tails"] = tails;
  report.diagnostics["denominatorPower"] = pe.D;
}

}  // namespace

CheckReport checkPhiPairCondition(const ExponentSet& exps, const PhiWeight& phi1, const PhiWeight& phi2,
                                  const Point& x0, const LogGrid& rGrid, const HarnessOptions& options) {
  requireDecades(rGrid, 4.0, "rGrid");
  CheckReport report;
  report.checkName = "checkPhiPairCondition";
  report.parameters = {{"exponents", exponentsJson(exps)}, {"phi1", weightJson(phi1)}, {"phi2", weightJson(phi2)},
                       {"x0", pointJson(x0)}, {"rGrid", gridJson(rGrid)},
                       {"essinfNodesPerDecade", options.phiTail.nodesPerDecade}};
  addPairSamples(report, exps, phi1, phi2, x0, rGrid, true, options.phiTail);
  finalizeReport(report, policyFrom(options));
  return report;
}

CheckReport checkPhiPairVanishing(const ExponentSet& exps, const PhiWeight& phi1, const PhiWeight& phi2,
                                  const Point& x0, const LogGrid& rGrid, const LogGrid& smallGrid,
                                  const HarnessOptions& options) {
  requireDecades(rGrid, 4.0, "rGrid");
  requireDecades(smallGrid, 4.0, "smallGrid");
  if (!(smallGrid.rMin() < 0.1)) throw DomainError("smallGrid must reach below r = 0.1");
  CheckReport report;
  report.checkName = "checkPhiPairVanishing";
  report.parameters = {{"exponents", exponentsJson(exps)}, {"phi1", weightJson(phi1)}, {"phi2", weightJson(phi2)},
                       {"x0", pointJson(x0)}, {"rGrid", gridJson(rGrid)}, {"smallGrid", gridJson(smallGrid)},
                       {"deltas", {0.25, 1.0, 4.0}}, {"logFactorForCDelta", "1 + |ln t|"}};

  // Integral bound with phi1 itself in place of the essinf.
  addPairSamples(report, exps, phi1, phi2, x0, rGrid, false, options.phiTail);

  // ln(1/r) / phi2 -> 0.
  std::vector<double> logRatio;
  for (double r : smallGrid.nodes()) logRatio.push_back(std::log(1.0 / r) / phi2(x0, r));
  std::size_t top = 0;
  while (top + 1 < smallGrid.size() && smallGrid[top + 1] <= 10.0 * smallGrid.rMin() * (1.0 + 1e-9)) ++top;
  bool decreasing = true;
  for (std::size_t i = 0; i < top; ++i) {
    if (logRatio[i] > logRatio[i + 1]) decreasing = false;
  }
  const bool logLimitOk = decreasing && logRatio.front() < 1e-2 && logRatio.front() >= 0.0;
  report.diagnostics["logLimit"] = {{"r", std::vector<double>(smallGrid.nodes().begin(), smallGrid.nodes().end())},
                                    {"values", logRatio},
                                    {"smallestNodeValue", logRatio.front()},
                                    {"decreasingOverBottomDecade", decreasing},
                                    {"ok", logLimitOk}};
  if (!logLimitOk) {
    report.fail("ln(1/r)/phi2 does not tend to 0: value " + std::to_string(logRatio.front()) + " at r = " +
                std::to_string(smallGrid.rMin()));
  }

  // c_delta < infinity for several delta.
  const PairExponents pe = pairExponents(exps);
  const double np = exps.n() / exps.p();
  json cdelta = json::array();
  std::vector<double> values;
  for (double delta : {0.25, 1.0, 4.0}) {
    const double one[] = {1.0};
    const std::vector<double> nodes = tailNodes(delta, one, options.phiTail);
    const PhiTailResult tail = integrateDecayingTail(
        [&](double t, std::size_t) {
          return std::pow(1.0 + std::abs(std::log(t)), exps.m()) * phi1(x0, t) * std::pow(t, np - pe.D);
        },
        nodes, options.phiTail);
    cdelta.push_back({{"delta", delta}, {"value", tail.value}, {"finite", tail.converged},
                      {"decayExponent", std::isfinite(tail.decayExponent) ? json(tail.decayExponent) : json("inf")}});
    if (!tail.converged) report.fail("c_delta diverges for delta = " + std::to_string(delta));
    values.push_back(tail.value);
  }
  if (!(values[0] >= values[1] * (1.0 - 1e-9) && values[1] >= values[2] * (1.0 - 1e-9))) {
    report.fail("c_delta is not non-increasing in delta");
  }
  report.diagnostics["cDelta"] = cdelta;
  finalizeReport(report, policyFrom(options));
  return report;
}

// ---- Morrey-space conclusions ------------------------------------------------------------

namespace {

/// phi2(x0,r)^{-1} |B(x0,r)|^{-1/q1} ||[b, T] f||_{L_{q1}(B(x0,r))} over the grid.
NormProfile commutatorMorreyProfile(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                                    double q1, const PhiWeight& phi2, const Point& x0, const LogGrid& grid,
                                    const QuadratureSettings& outer) {
  const int n = cfg.dim();
  std::vector<double> values(grid.size(), 0.0);
  const bool vanishes = std::any_of(b.begin(), b.end(), [](const Symbol& s) { return s.constantValue().has_value(); });
  if (!vanishes) {
    const std::vector<double> norms = lqNormProfile(
        [&](const Point& x) { return multilinearCommutator(cfg, b, f, x); }, q1, x0, grid, outputFeatures(f, b),
        outer);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      values[k] = norms[k] * std::pow(ballVolume(n, grid[k]), -1.0 / q1) / phi2(x0, grid[k]);
    }
  }
  return NormProfile(x0, grid, std::move(values));
}

json trendJson(const VanishingTrend& t) {
  return {{"isVanishing", t.isVanishing}, {"monotone", t.monotone}, {"smallestValue", t.smallestValue},
          {"cutoff", t.cutoff}, {"tailMax", t.tailMax}};
}

}  // namespace

CheckReport checkMorreyBoundedness(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                   const TestFunction& f, const PhiWeight& phi1, const PhiWeight& phi2,
                                   const Point& x0, const LogGrid& profileGrid, std::span<const double> lambdas,
                                   const HarnessOptions& options) {
  requireAlphaMatch(cfg, exps.n(), exps.alpha());
  const int n = exps.n();
  CheckReport report;
  report.checkName = "checkMorreyBoundedness";
  report.parameters = {{"operator", operatorJson(cfg)},
                       {"exponents", exponentsJson(exps)},
                       {"b", symbolsJson(b)},
                       {"f", f.label()},
                       {"phi1", weightJson(phi1)},
                       {"phi2", weightJson(phi2)},
                       {"x0", pointJson(x0)},
                       {"profileGrid", gridJson(profileGrid)},
                       {"lambdas", std::vector<double>(lambdas.begin(), lambdas.end())},
                       {"campanatoGrid", gridJson(options.campanatoGrid)}};

  const CheckReport pair = checkPhiPairCondition(exps, phi1, phi2, x0, options.pairGrid, options);
  report.diagnostics["weightPairVerdict"] = toString(pair.verdict);
  if (pair.verdict == Verdict::Fail) report.warn("weight-pair condition fails for (phi1, phi2); result is inconclusive");

  const std::vector<double> bNorms = campanatoNorms(b, exps, x0, options.campanatoGrid, options.outer);
  report.diagnostics["campanatoNorms"] = bNorms;

  json profiles = json::array();
  for (double lambda : lambdas) {
    const TestFunction fl = lambda == 1.0 ? f : f.dilated(lambda);
    const std::vector<Symbol> bl = dilateAll(b, lambda);
    double normProduct = 1.0;
    for (int i = 0; i < exps.m(); ++i) normProduct *= std::pow(lambda, n * exps.lambdas()[i]) * bNorms[i];
    const NormProfile out = commutatorMorreyProfile(cfg, bl, fl, exps.q1(), phi2, x0, profileGrid, options.outer);
    const NormProfile in = localMorreyNorm(fl, exps.p(), phi1, x0, profileGrid, options.outer);
    if (out.supAtEndpoint || in.supAtEndpoint) {
      report.note("sup attained at a profile-grid endpoint for lambda = " + std::to_string(lambda));
    }
    report.addSample(out.supValue, normProduct * in.supValue,
                     {{"lambda", lambda}, {"argSupOutput", out.argSup}, {"argSupInput", in.argSup}});
    profiles.push_back({{"lambda", lambda}, {"output", profileToJson(out)}, {"input", profileToJson(in)}});
  }
  report.diagnostics["profiles"] = profiles;
  finalizeReport(report, policyFrom(options));
  return report;
}

CheckReport checkVanishingImplication(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                      const TestFunction& f, const PhiWeight& phi1, const PhiWeight& phi2,
                                      const Point& x0, const LogGrid& profileGrid, const HarnessOptions& options) {
  requireAlphaMatch(cfg, exps.n(), exps.alpha());
  CheckReport report;
  report.checkName = "checkVanishingImplication";
  report.parameters = {{"operator", operatorJson(cfg)}, {"exponents", exponentsJson(exps)},
                       {"b", symbolsJson(b)},           {"f", f.label()},
                       {"phi1", weightJson(phi1)},      {"phi2", weightJson(phi2)},
                       {"x0", pointJson(x0)},           {"profileGrid", gridJson(profileGrid)},
                       {"threshold", 1e-2},             {"decades", 2.0}};

  const CheckReport pair =
      checkPhiPairVanishing(exps, phi1, phi2, x0, options.pairGrid, options.smallGrid, options);
  report.diagnostics["weightPairVerdict"] = toString(pair.verdict);
  if (pair.verdict == Verdict::Fail) report.warn("vanishing weight-pair conditions fail; result is inconclusive");

  const NormProfile in = localMorreyNorm(f, exps.p(), phi1, x0, profileGrid, options.outer);
  VanishingTrend inTrend;
  try {
    inTrend = vanishingTrend(in);
  } catch (const DomainError& e) {
    report.warn(std::string("inconclusive: ") + e.what());
    finalizeReport(report, FinalizePolicy{kInfinity, {}, {}});
    return report;
  }
  report.diagnostics["input"] = {{"profile", profileToJson(in)}, {"trend", trendJson(inTrend)}};
  if (!inTrend.isVanishing) report.warn("input profile does not vanish at r -> 0; the implication is not exercised");

  const NormProfile out = commutatorMorreyProfile(cfg, b, f, exps.q1(), phi2, x0, profileGrid, options.outer);
  const VanishingTrend outTrend = vanishingTrend(out);
  report.diagnostics["output"] = {{"profile", profileToJson(out)}, {"trend", trendJson(outTrend)}};
  for (std::size_t k = 0; k < profileGrid.size(); ++k) {
    report.addSample(out.values[k], out.supValue, {{"r", profileGrid[k]}});
  }
  if (!outTrend.isVanishing) report.fail("output profile does not vanish over the bottom two decades");
  finalizeReport(report, FinalizePolicy{kInfinity, {}, {}});
  return report;
}

}  // namespace fracmorrey

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/harness.hpp"
#include "testing.hpp"

using namespace fracmorrey;
using testing::relErr;

namespace {

OperatorConfig op(const char* kernel, double alpha, int n = 1) {
  return OperatorConfig(catalogKernel(kernel, n), alpha);
}

// n = 1, alpha = 0.1, p = 1.25, p_1 = 20/3, s = 40
ExponentSet setA() { return ExponentSet::derive(1, 0.1, 40.0, 1.25, {20.0 / 3.0}, {0.0}, Regime::SPrimeLeq); }

bool passed(const CheckReport& r) { return r.verdict == Verdict::Pass; }

}  // namespace

TEST_CASE("size condition") {
  const std::vector<Point> xs{Point{1.5}, Point{-2.0}, Point{4.0}};
  const CheckReport r = checkSizeCondition(op("sign_theta1", 0.5), catalogFunction("indicator", 1), xs);
  CHECK(passed(r));
  // a unimodular kernel outside the support: T f = T~|f| exactly
  CHECK(r.fittedConstant == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.samples.size() == 3);

  const CheckReport g = checkSizeCondition(op("theta1", 0.5, 2), catalogFunction("indicator", 2),
                                           std::vector<Point>{Point{2.0, 1.0}, Point{0.0, -3.0}});
  CHECK(passed(g));
  CHECK(g.fittedConstant <= 1.0 + 1e-5);

  const std::vector<Point> inside{Point{0.5}};
  CHECK_THROWS_AS(checkSizeCondition(op("one", 0.5), catalogFunction("indicator", 1), inside), DomainError);
}

TEST_CASE("majorant domination") {
  const std::vector<Point> xs{Point{0.0}, Point{0.7}, Point{-2.5}};
  const CheckReport r = checkMajorantDomination(op("theta1", 0.5), catalogFunction("gaussian", 1), xs);
  CHECK(passed(r));
  CHECK(r.fittedConstant <= 1.0);
  CHECK(r.fittedConstant > 0.1);
}

TEST_CASE("kernel shell bound") {
  const std::vector<Point> xs{Point{0.0}, Point{0.5}};
  const CheckReport r =
      checkKernelShellBound(catalogKernel("one", 1), 4.0, xs, logGrid(0.25, 4.0, 5), Point{0.0});
  CHECK(passed(r));
  // |B(x, t) ∩ ...|^{1/s} / |B(x0, 2t)|^{1/s} * |S^0|^{-1/s}: at most 1
  CHECK(r.fittedConstant <= 1.0 + 1e-12);
}

TEST_CASE("Lebesgue boundedness") {
  const LebesgueExponents e = LebesgueExponents::derive(1, 0.5, 4.0, 1.5, Regime::SPrimeLeq);
  const std::vector<TestFunction> family{catalogFunction("indicator", 1), catalogFunction("gaussian", 1)};
  const std::vector<double> lambdas{0.5, 1.0, 2.0};
  const CheckReport r = checkLebesgueBoundedness(op("one", 0.5), e, family, lambdas);
  CHECK(passed(r));
  CHECK(r.samples.size() == 6);
  CHECK(r.stabilityRatio < 1.5);
  // exact dilation invariance of the ratio at the critical exponent pair
  CHECK(r.diagnostics["functions"][0]["dilationSpread"].get<double>() < 1e-4);
}

TEST_CASE("Campanato estimates") {
  const LogGrid radii = logGrid(1e-3, 1e3, 13);
  const CheckReport b = checkCampanatoB(catalogSymbol("log", 1), 1.0, 0.0, Point{0.0}, radii);
  CHECK(passed(b));
  CHECK(b.fittedConstant <= std::numbers::e / 2.0 + 1e-3);
  CHECK(b.diagnostics["campanatoNorm"].get<double>() == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-6));

  const CheckReport a = checkCampanatoA(catalogSymbol("log", 1), 1.0, 0.0, Point{0.0}, radii);
  CHECK(passed(a));
  const CheckReport c = checkCampanatoC(catalogSymbol("sign", 1), 2.0, 0.0, Point{0.0}, radii);
  CHECK(passed(c));
  CHECK_FALSE(c.notes.empty());

  const CheckReport flat = checkCampanatoB(catalogSymbol("const", 1), 1.0, 0.0, Point{0.0}, radii);
  CHECK(flat.vacuous());
  CHECK_FALSE((flat.verdict == Verdict::Fail));
}

TEST_CASE("local estimates are dilation covariant") {
  const LebesgueExponents e = LebesgueExponents::derive(1, 0.5, 4.0, 1.5, Regime::SPrimeLeq);
  const std::vector<double> lambdas{0.25, 1.0, 4.0};
  const LogGrid rGrid = logGrid(0.0625, 4.0, 4);
  const CheckReport l1 =
      checkLocalBoundLemma1(op("one", 0.5), e, catalogFunction("indicator", 1), Point{0.5}, rGrid, lambdas);
  CHECK(passed(l1));
  CHECK(l1.stabilityRatio <= 3.0);
  CHECK(l1.diagnostics["dilationSpread"].get<double>() < 1e-3);
  CHECK(l1.diagnostics["split"].size() == rGrid.size());

  const ExponentSet a = setA();
  const std::vector<Symbol> b{catalogSymbol("sign", 1)};
  const CheckReport l2 = checkCommutatorBoundLemma2(op("one", 0.1), a, b, catalogFunction("indicator", 1),
                                                    Point{0.5}, rGrid, lambdas);
  CHECK(passed(l2));
  CHECK(l2.diagnostics["dilationSpread"].get<double>() < 1e-3);

  const std::vector<Symbol> c{catalogSymbol("const", 1)};
  const CheckReport vac = checkCommutatorBoundLemma2(op("one", 0.1), a, c, catalogFunction("indicator", 1),
                                                     Point{0.5}, rGrid, lambdas);
  CHECK(vac.vacuous());

  CHECK_THROWS_AS(checkCommutatorBoundLemma2(op("one", 0.5), a, b, catalogFunction("indicator", 1), Point{0.5},
                                             rGrid, lambdas),
                  DomainError);
  const std::vector<Symbol> two{catalogSymbol("log", 1), catalogSymbol("sign", 1)};
  CHECK_THROWS_AS(checkCommutatorBoundLemma2(op("one", 0.1), a, two, catalogFunction("indicator", 1), Point{0.5},
                                             rGrid, lambdas),
                  DomainError);
}

TEST_CASE("weight pair condition") {
  const ExponentSet a = setA();
  const LogGrid grid = logGrid(1e-4, 1e4, 17);
  const PhiWeight phi1 = catalogWeight("rpow", {{"a", -0.8}});
  const PhiWeight phi2 = catalogWeight("rpow", {{"a", -0.7}});
  const CheckReport good = checkPhiPairCondition(a, phi1, phi2, Point{0.0}, grid);
  CHECK(passed(good));
  // power weights make every ratio the same constant, 1/beta + 1/beta^2 with beta = n/p - alpha
  const double beta = 1.0 / 1.25 - 0.1;
  CHECK(relErr(good.fittedConstant, 1.0 / beta + 1.0 / (beta * beta)) < 1e-3);
  CHECK(good.stabilityRatio < 1.01);

  const CheckReport bad = checkPhiPairCondition(a, phi1, catalogWeight("constant"), Point{0.0}, grid);
  CHECK((bad.verdict == Verdict::Fail));

  const CheckReport van =
      checkPhiPairVanishing(a, phi1, phi2, Point{0.0}, grid, logGrid(1e-12, 1.0, 49));
  CHECK(passed(van));
  CHECK(van.diagnostics.contains("cDelta"));
  CHECK_THROWS_AS(checkPhiPairCondition(a, phi1, phi2, Point{0.0}, logGrid(1.0, 10.0, 3)), DomainError);
}

TEST_CASE("Morrey-space checks") {
  const ExponentSet a = setA();
  const std::vector<Symbol> b{catalogSymbol("sign", 1)};
  const PhiWeight phi1 = catalogWeight("rpow", {{"a", -0.8}});
  const PhiWeight phi2 = catalogWeight("rpow", {{"a", -0.7}});
  const std::vector<double> lambdas{0.5, 1.0, 2.0};
  const CheckReport m = checkMorreyBoundedness(op("one", 0.1), a, b, catalogFunction("indicator", 1), phi1, phi2,
                                               Point{0.0}, logGrid(1e-4, 1e4, 17), lambdas);
  CHECK(passed(m));
  CHECK(m.diagnostics["weightPairVerdict"] == "pass");

  const CheckReport v = checkVanishingImplication(op("one", 0.1), a, b, catalogFunction("indicator", 1), phi1, phi2,
                                                  Point{0.0}, logGrid(1e-4, 10.0, 16));
  CHECK(passed(v));
  CHECK(v.diagnostics["output"]["trend"]["isVanishing"] == true);
}

TEST_CASE("helpers") {
  const std::vector<double> prof =
      lqNormProfile([](const Point&) { return 1.0; }, 2.0, Point{0.0}, logGrid(0.5, 8.0, 5), {}, {});
  for (std::size_t i = 0; i < prof.size(); ++i) {
    CHECK(relErr(prof[i], std::sqrt(2.0 * 0.5 * std::pow(2.0, i))) < 1e-8);
  }
  const ExponentSet a = setA();
  const std::vector<Symbol> b{catalogSymbol("sign", 1)};
  const std::vector<double> norms = campanatoNorms(b, a, Point{0.0}, logGrid(1e-2, 1e2, 9));
  REQUIRE(norms.size() == 1);
  CHECK(norms[0] == doctest::Approx(1.0).epsilon(1e-8));
}

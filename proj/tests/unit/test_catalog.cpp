#include <cmath>
#include <vector>

#include "doctest.h"
#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/quadrature.hpp"
#include "testing.hpp"

using namespace fracmorrey;
using testing::relErr;

namespace {

// integral of g over ball intersected with the function's support
double overBall(const TestFunction& f, const Ball& ball, const std::function<double(const Point&)>& g) {
  std::vector<Ball> domain{ball};
  for (const Ball& b : f.support()) domain.push_back(b);
  Features features = f.features();
  features.spheres.push_back(ball);
  QuadratureSettings qs;
  qs.relTol = 1e-10;
  PolarIntegrand in;
  in.g = g;
  return integratePolar(ball.center(), ball.dim(), domain, features, in, qs).value;
}

double quadLpNorm(const TestFunction& f, double p, const Ball& ball) {
  return std::pow(overBall(f, ball, [&](const Point& y) { return std::pow(std::abs(f(y)), p); }), 1.0 / p);
}

double quadMean(const Symbol& b, const Ball& ball) {
  const TestFunction whole(ball.dim(), [](const Point&) { return 1.0; }, {ball}, b.features(), "ball");
  return overBall(whole, ball, [&](const Point& y) { return b(y); }) / ballVolume(ball.dim(), ball.radius());
}

}  // namespace

TEST_CASE("every listed entry can be instantiated") {
  const auto listing = catalogListing();
  CHECK(listing.size() == 4 + 5 + 4 + 7);
  for (int n : {1, 2}) {
    for (const CatalogEntryInfo& e : listing) {
      CAPTURE(e.name);
      if (e.kind == "kernel") CHECK(catalogKernel(e.name, n).dim() == n);
      if (e.kind == "function") CHECK(catalogFunction(e.name, n).dim() == n);
      if (e.kind == "symbol") CHECK(catalogSymbol(e.name, n).dim() == n);
      if (e.kind == "weight") CHECK(catalogWeight(e.name).label() == e.name);
    }
    const Catalog c = builtinCatalog(n);
    CHECK(c.kernels.size() == 4);
    CHECK(c.weights.size() == 7);
  }
  CHECK_THROWS_AS(catalogKernel("missing", 1), DomainError);
  CHECK_THROWS_AS(catalogFunction("missing", 1), DomainError);
  CHECK_THROWS_AS(catalogSymbol("missing", 1), DomainError);
}

TEST_CASE("Lp norm oracles agree with quadrature") {
  struct Case {
    const char* f;
    double p;
    Ball ball;
  };
  const std::vector<Case> cases{
      {"indicator", 1.0, Ball(Point{0.0}, 0.5)},       {"indicator", 2.0, Ball(Point{0.7}, 0.6)},
      {"indicator", 3.0, Ball(Point{0.0}, 4.0)},       {"indicator", 1.5, Ball(Point{0.5, 0.5}, 1.0)},
      {"indicator", 2.0, Ball(Point{3.0, 0.0}, 2.5)},  {"indicator", 2.0, Ball(Point{0.0, 0.0}, 0.3)},
      {"gaussian", 2.0, Ball(Point{0.0}, 1.0)},        {"gaussian", 1.0, Ball(Point{0.0, 0.0}, 2.0)},
      {"trunc_power", 1.0, Ball(Point{0.0}, 0.5)},     {"trunc_power", 2.0, Ball(Point{0.0}, 3.0)},
      {"trunc_power", 1.5, Ball(Point{0.0, 0.0}, 0.8)}, {"zero", 2.0, Ball(Point{0.0, 0.0}, 1.0)},
  };
  for (const Case& c : cases) {
    CAPTURE(c.f);
    CAPTURE(c.p);
    const TestFunction f = catalogFunction(c.f, c.ball.dim());
    const auto oracle = f.lpNormOracle(c.p, c.ball);
    REQUIRE(oracle.has_value());
    const double q = quadLpNorm(f, c.p, c.ball);
    if (*oracle == 0.0) {
      CHECK(q == 0.0);
    } else {
      CHECK(relErr(q, *oracle) < 1e-8);
    }
  }
  CHECK_FALSE(catalogFunction("gaussian", 1).lpNormOracle(2.0, Ball(Point{1.0}, 1.0)).has_value());
  CHECK_FALSE(catalogFunction("cosine", 1).lpNormOracle(2.0, Ball(Point{0.0}, 1.0)).has_value());
}

TEST_CASE("symbol mean oracles agree with quadrature") {
  struct Case {
    const char* b;
    Ball ball;
  };
  const std::vector<Case> cases{
      {"sign", Ball(Point{0.3}, 1.0)},           {"sign", Ball(Point{0.3, 2.0}, 0.7)},
      {"sign", Ball(Point{-0.2, 0.0}, 1.5)},     {"log", Ball(Point{0.0}, 3.0)},
      {"log", Ball(Point{2.0}, 1.0)},            {"log", Ball(Point{0.5}, 2.0)},
      {"log", Ball(Point{0.0, 0.0}, 0.25)},      {"trunc_linear", Ball(Point{0.5}, 2.0)},
      {"trunc_linear", Ball(Point{0.0, 0.0}, 3.0)}, {"const", Ball(Point{1.0, 1.0}, 1.0)},
  };
  for (const Case& c : cases) {
    CAPTURE(c.b);
    const Symbol b = catalogSymbol(c.b, c.ball.dim());
    const auto oracle = b.meanOracle(c.ball);
    REQUIRE(oracle.has_value());
    CHECK(std::abs(quadMean(b, c.ball) - *oracle) < 1e-8 * std::max(1.0, std::abs(*oracle)));
  }
}

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/operators.hpp"
#include "testing.hpp"

using namespace fracmorrey;
using testing::relErr;

namespace {

OperatorConfig config(const char* kernel, int n, double alpha) {
  QuadratureSettings qs;
  qs.relTol = 1e-9;
  return OperatorConfig(catalogKernel(kernel, n), alpha, qs);
}

// Riesz potential of chi_[-1,1] in one dimension
double rieszIndicator(double alpha, double x) {
  const double a = std::abs(x);
  if (a < 1.0) return (std::pow(1.0 + a, alpha) + std::pow(1.0 - a, alpha)) / alpha;
  return (std::pow(a + 1.0, alpha) - std::pow(a - 1.0, alpha)) / alpha;
}

}  // namespace

TEST_CASE("fractional integral of the indicator in one dimension") {
  const TestFunction f = catalogFunction("indicator", 1);
  // x = 1 sits on the support boundary, where rays start on a jump
  for (double alpha : {0.1, 0.25, 0.5, 0.9}) {
    const OperatorConfig one = config("one", 1, alpha);
    const OperatorConfig sgn = config("sign_theta1", 1, alpha);
    for (double x : {0.0, 0.3, -0.7, 1.0, 1.5, -3.0, 20.0}) {
      CAPTURE(alpha);
      CAPTURE(x);
      CHECK(relErr(fractionalIntegral(one, f, Point{x}), rieszIndicator(alpha, x)) < 1e-8);
      // sgn(x - y): the part of the support left of x counts positive
      const double lo = std::min(x, 1.0) + 1.0;   // length of [-1, x] within the support
      const double hi = std::max(0.0, 1.0 - std::max(x, -1.0));
      double want = 0.0;
      if (lo > 0.0) want += (std::pow(x + 1.0, alpha) - std::pow(x - std::min(x, 1.0), alpha)) / alpha;
      if (hi > 0.0) want -= (std::pow(1.0 - x, alpha) - std::pow(std::max(-1.0, x) - x, alpha)) / alpha;
      CHECK(std::abs(fractionalIntegral(sgn, f, Point{x}) - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("fractional integral in two dimensions") {
  const TestFunction f = catalogFunction("indicator", 2);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const OperatorConfig one = config("one", 2, alpha);
    CHECK(relErr(fractionalIntegral(one, f, Point{0.0, 0.0}), 2.0 * std::numbers::pi / alpha) < 1e-8);
    // rotation invariance of the radial kernel
    CHECK(relErr(fractionalIntegral(one, f, Point{0.0, 2.0}), fractionalIntegral(one, f, Point{2.0, 0.0})) < 1e-8);
    CHECK(relErr(fractionalIntegral(one, f, Point{0.3, 0.4}), fractionalIntegral(one, f, Point{0.5, 0.0})) < 1e-8);
    // odd kernel against an even function vanishes at the centre
    CHECK(std::abs(fractionalIntegral(config("theta1", 2, alpha), f, Point{0.0, 0.0})) < 1e-10);
  }
}

TEST_CASE("variable kernel") {
  const double alpha = 0.5;
  const TestFunction f = catalogFunction("indicator", 1);
  const double x = 3.0;
  const double want = (1.0 + std::sin(x)) * rieszIndicator(alpha, x);
  CHECK(relErr(fractionalIntegral(config("xdep", 1, alpha), f, Point{x}), want) < 1e-8);
}

TEST_CASE("commutators") {
  const double alpha = 0.5;
  const OperatorConfig one = config("one", 1, alpha);
  const TestFunction f = catalogFunction("indicator", 1);

  const std::vector<Symbol> constant{catalogSymbol("const", 1)};
  CHECK(multilinearCommutator(one, constant, f, Point{0.4}) == 0.0);
  CHECK(maximalCommutator(one, constant, f, Point{0.4}) == 0.0);

  // b = sign, x = 2: b(x) - b(y) = 2 on y < 0
  const std::vector<Symbol> sgn{catalogSymbol("sign", 1)};
  const double want = 2.0 * (std::pow(3.0, alpha) - std::pow(2.0, alpha)) / alpha;
  CHECK(relErr(multilinearCommutator(one, sgn, f, Point{2.0}), want) < 1e-8);

  // two copies of the same symbol: (b(x) - b(y))^2 = 4 on y < 0
  const std::vector<Symbol> twice{catalogSymbol("sign", 1), catalogSymbol("sign", 1)};
  CHECK(relErr(multilinearCommutator(one, twice, f, Point{2.0}), 2.0 * want) < 1e-8);

  CHECK_THROWS_AS(multilinearCommutator(one, {}, f, Point{0.3}), DomainError);
}

TEST_CASE("maximal operators") {
  for (double alpha : {0.25, 0.5}) {
    const OperatorConfig one = config("one", 1, alpha);
    const TestFunction f = catalogFunction("indicator", 1);
    const MaximalResult m = fractionalMaximalDetailed(one, f, Point{0.0});
    // sup_t (2t)^{alpha-1} 2 min(t, 1) = 2^alpha at t = 1
    CHECK(relErr(m.value, std::pow(2.0, alpha)) < 1e-10);
    CHECK(m.argT == doctest::Approx(1.0));
    CHECK(m.stable);
    CHECK(m.refinedValue >= m.value * (1.0 - 1e-12));
    CHECK(majorantConstant(1, alpha) == doctest::Approx(std::pow(2.0, 1.0 - alpha)));
  }
  CHECK(majorantConstant(2, 1.0) == doctest::Approx(std::sqrt(std::numbers::pi)));
}

TEST_CASE("majorant dominates") {
  testing::Rng rng(11);
  for (const char* kernel : {"theta1", "sign_theta1", "xdep"}) {
    for (const char* fn : {"gaussian", "cosine", "trunc_power"}) {
      const OperatorConfig cfg = config(kernel, 1, 0.4);
      const TestFunction f = catalogFunction(fn, 1);
      for (int i = 0; i < 4; ++i) {
        const Point x{rng.uniform(-3.0, 3.0)};
        CAPTURE(kernel);
        CAPTURE(fn);
        CAPTURE(x[0]);
        const double t = tTildeMajorant(cfg, f, x);
        CHECK(std::abs(fractionalIntegral(cfg, f, x)) <= t * (1.0 + 1e-8));
        CHECK(fractionalMaximal(cfg, f, x) <= t / majorantConstant(1, 0.4) * (1.0 + 1e-6));
      }
    }
  }
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(OperatorConfig(catalogKernel("one", 1), 1.0), DomainError);
  CHECK_THROWS_AS(OperatorConfig(catalogKernel("one", 1), 0.0), DomainError);
  const OperatorConfig cfg = config("one", 1, 0.5);
  CHECK_THROWS_AS(fractionalIntegral(cfg, catalogFunction("indicator", 2), Point{0.0}), DomainError);
}

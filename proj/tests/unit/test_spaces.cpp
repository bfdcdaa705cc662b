#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/spaces.hpp"
#include "testing.hpp"

using namespace fracmorrey;
using testing::relErr;

TEST_CASE("norms and means on balls") {
  const TestFunction ind = catalogFunction("indicator", 1);
  CHECK(relErr(lpNormOnBall(ind, 2.0, Ball(Point{0.5}, 1.0)), std::sqrt(1.5)) < 1e-10);
  CHECK(relErr(lpNormOnBall(catalogFunction("indicator", 2), 1.0, Ball(Point{0.0, 0.0}, 3.0)), std::numbers::pi) < 1e-9);
  CHECK_THROWS_AS(lpNormOnBall(ind, 0.5, Ball(Point{0.0}, 1.0)), DomainError);
  CHECK_THROWS_AS(lpNormOnBall(ind, 2.0, Ball(Point{0.0, 0.0}, 1.0)), DomainError);

  const Symbol sgn = catalogSymbol("sign", 1);
  CHECK(ballMean(sgn, Ball(Point{0.25}, 1.0)) == doctest::Approx(0.25).epsilon(1e-12));
  // integral over (-r, r) of |sgn - 0|^p = 2r
  CHECK(relErr(oscillationOnBall(sgn, 3.0, Ball(Point{0.0}, 2.0), 0.0), std::cbrt(4.0)) < 1e-10);
}

TEST_CASE("Campanato profiles with closed forms") {
  const LogGrid grid = logGrid(1e-3, 1e3, 13);
  const Point x0{0.0};

  const NormProfile sgn = campanatoNorm(catalogSymbol("sign", 1), 1.0, 0.0, x0, grid);
  for (double v : sgn.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

  // log: |B|^{-1} integral of |log|y| - (log r - 1)| = integral_0^1 |log t + 1| dt = 2/e
  const NormProfile lg = campanatoNorm(catalogSymbol("log", 1), 1.0, 0.0, x0, grid);
  for (double v : lg.values) CHECK(v == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-8));
  CHECK(lg.supValue == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-8));

  // lambda > 0 on sign: (2r)^{-lambda}
  const NormProfile decay = campanatoNorm(catalogSymbol("sign", 1), 2.0, 0.5, x0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(relErr(decay.values[i], std::pow(2.0 * grid[i], -0.5)) < 1e-8);
  }
  CHECK(decay.argSup == grid.rMin());
  CHECK(decay.supAtEndpoint);

  const NormProfile c = campanatoNorm(catalogSymbol("const", 2), 2.0, 0.0, Point{1.0, 1.0}, grid);
  for (double v : c.values) CHECK(v == 0.0);

  CHECK_THROWS_AS(campanatoNorm(catalogSymbol("sign", 1), 1.0, 1.0, x0, grid), DomainError);
}

TEST_CASE("local Morrey norm of the indicator") {
  // power weight r^{(lambda - n)/p}: the functional is r^{-lambda/p} min(r, 1)^{n/p}, sup 1 at r = 1
  const LogGrid grid = logGrid(1e-2, 1e2, 17);
  struct Case {
    int n;
    double p;
    double lambda;
  };
  for (const Case& c : {Case{1, 2.0, 0.0}, Case{2, 2.0, 0.0}, Case{1, 4.0 / 3.0, 0.5}}) {
    const PhiWeight phi = catalogWeight("power", {{"n", c.n}, {"p", c.p}, {"lambda", c.lambda}});
    const TestFunction f = catalogFunction("indicator", c.n);
    const NormProfile m = localMorreyNorm(f, c.p, phi, Point::origin(c.n), grid);
    CHECK(relErr(m.supValue, 1.0) < 1e-8);
    CHECK(m.argSup == doctest::Approx(1.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid[i];
      CHECK(relErr(m.values[i], std::pow(r, -c.lambda / c.p) * std::pow(std::min(r, 1.0), c.n / c.p)) < 1e-8);
    }
  }
  CHECK_THROWS_AS(morreyFunctional(catalogFunction("indicator", 1), 2.0, catalogWeight("constant"), Point{0.0}, 0.0),
                  DomainError);
}

TEST_CASE("profiles and vanishing trends") {
  const LogGrid grid = logGrid(1e-4, 1.0, 9);
  std::vector<double> rising;
  std::vector<double> flat(grid.size(), 2.0);
  for (double r : grid.nodes()) rising.push_back(std::pow(r, 0.75));
  const NormProfile up(Point{0.0}, grid, rising);
  CHECK(up.argSup == 1.0);
  CHECK(up.supAtEndpoint);
  const VanishingTrend t = vanishingTrend(up);
  CHECK(t.isVanishing);
  CHECK(t.monotone);
  CHECK(t.smallestValue == doctest::Approx(1e-3));
  CHECK_FALSE(vanishingTrend(NormProfile(Point{0.0}, grid, flat)).isVanishing);
  CHECK(vanishingTrend(NormProfile(Point{0.0}, grid, std::vector<double>(grid.size(), 0.0))).isVanishing);
  CHECK_THROWS_AS(vanishingTrend(up, 1e-2, 5.0), DomainError);

  // plateau: argSup is the first node within rounding of the sup
  std::vector<double> plateau{0.5, 1.0, 1.0 - 1e-15, 1.0, 0.2, 0.1, 0.1, 0.1, 0.1};
  CHECK(NormProfile(Point{0.0}, grid, plateau).argSup == grid[1]);

  CHECK_THROWS_AS(NormProfile(Point{0.0}, grid, {1.0}), DomainError);
  std::vector<double> bad(grid.size(), 1.0);
  bad[3] = -1.0;
  CHECK_THROWS_AS(NormProfile(Point{0.0}, grid, bad), DomainError);

  const std::string csv = profileToCsv(up);
  CHECK(csv.rfind("r,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  const nlohmann::json j = profileToJson(up);
  CHECK(j.is_object());
}

TEST_CASE("tail extrema") {
  const LogGrid grid = logGrid(1.0, 16.0, 5);
  auto id = [](double t) { return t; };
  auto dip = [](double t) { return std::abs(t - 8.0) + 1.0; };
  CHECK(essInfOnTail(id, 2.0, grid) == doctest::Approx(4.0));
  CHECK(maxOnTail(id, 2.0, grid) == doctest::Approx(16.0));
  CHECK(essInfOnTail(dip, 0.5, grid) == doctest::Approx(1.0));
  CHECK(essInfOnTail(dip, 8.0, grid) == doctest::Approx(9.0));
  CHECK_THROWS_AS(maxOnTail(id, 16.0, grid), DomainError);
}

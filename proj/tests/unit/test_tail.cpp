#include <cmath>
#include <vector>

#include "doctest.h"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/tail.hpp"
#include "testing.hpp"

using namespace fracmorrey;
using testing::relErr;

TEST_CASE("power-log tails in closed form") {
  const double T = 3.0;
  for (double e : {-1.5, -2.0, -4.0}) {
    const double k = -e - 1.0;
    const double base = std::pow(T, e + 1.0);
    CHECK(relErr(powerLogTail(T, 0.7, 0, e), base / k) < 1e-13);
    CHECK(relErr(powerLogTail(T, 0.7, 1, e), base * (0.7 / k + 1.0 / (k * k))) < 1e-13);
    CHECK(relErr(powerLogTail(T, 0.7, 2, e), base * (0.49 / k + 1.4 / (k * k) + 2.0 / (k * k * k))) < 1e-13);
  }
  CHECK_THROWS_AS(powerLogTail(T, 1.0, 1, -1.0), DomainError);
}

TEST_CASE("Lp tail integral with a compactly supported profile") {
  // N(t) = min(t, 2)^{1/2}, a = r = 1, m = 0, e = -2
  auto N = [](double t) { return std::sqrt(std::min(t, 2.0)); };
  const double kinks[] = {2.0};
  const TailIntegral t = lpTailIntegral(N, 1.0, 1.0, 0, -2.0, 2.0, kinks);
  const double want = 2.0 * (1.0 - 1.0 / std::sqrt(2.0)) + std::sqrt(2.0) / 2.0;
  CHECK(relErr(t.value, want) < 1e-10);
  CHECK(relErr(t.analyticPart, std::sqrt(2.0) / 2.0) < 1e-13);
  CHECK(t.refinementOk);
  CHECK(t.relativeChange < 1e-8);

  // constant profile: everything is analytic, with the log factor
  const TailIntegral c = lpTailIntegral([](double) { return 3.0; }, 2.0, 1.0, 1, -3.0, 0.5, {});
  CHECK(relErr(c.value, 3.0 * powerLogTail(2.0, 1.0 + std::log(2.0), 1, -3.0)) < 1e-12);
  CHECK(c.quadraturePart == 0.0);

  CHECK_THROWS_AS(lpTailIntegral(N, 1.0, 1.0, 0, -1.0, 2.0, kinks), DomainError);
}

TEST_CASE("pointwise tails") {
  const PhiTailScheme scheme;
  const std::vector<double> nodes = tailNodes(1.0, std::vector<double>{5.0}, scheme);
  CHECK(nodes.front() == 1.0);
  CHECK(std::find(nodes.begin(), nodes.end(), 5.0) != nodes.end());
  CHECK(std::is_sorted(nodes.begin(), nodes.end()));

  const PhiTailResult good =
      integrateDecayingTail([](double t, std::size_t) { return std::pow(t, -2.5); }, nodes, scheme);
  CHECK(good.converged);
  CHECK(relErr(good.value, 1.0 / 1.5) < 1e-9);
  CHECK(good.decayExponent == doctest::Approx(1.5).epsilon(1e-6));

  const PhiTailResult bad = integrateDecayingTail([](double t, std::size_t) { return 1.0 / t; }, nodes, scheme);
  CHECK_FALSE(bad.converged);
}

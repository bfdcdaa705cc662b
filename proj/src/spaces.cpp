#include "fracmorrey/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

double lpNormOnBall(const TestFunction& f, double p, const Ball& ball, const QuadratureSettings& settings) {
  if (!(p >= 1.0)) throw DomainError("lpNormOnBall: p must be >= 1");
  if (ball.dim() != f.dim()) throw DomainError("lpNormOnBall: dimension mismatch");
  std::vector<Ball> domain{ball};
  domain.insert(domain.end(), f.support().begin(), f.support().end());
  PolarIntegrand integrand;
  integrand.g = [&f, p](const Point& y) {
    const double v = std::abs(f(y));
    return p == 1.0 ? v : std::pow(v, p);
  };
  const QuadResult r = integratePolar(ball.center(), f.dim(), domain, f.features(), integrand, settings);
  return std::pow(std::max(0.0, r.value), 1.0 / p);
}

double ballMean(const Symbol& b, const Ball& ball, const QuadratureSettings& settings) {
  if (ball.dim() != b.dim()) throw DomainError("ballMean: dimension mismatch");
  if (auto c = b.constantValue()) return *c;
  const QuadResult r = integrateOverBall(ball, [&b](const Point& y) { return b(y); }, b.features(), settings);
  return r.value / ballVolume(ball.dim(), ball.radius());
}

double oscillationOnBall(const Symbol& b, double p, const Ball& ball, double c, const QuadratureSettings& settings) {
  if (!(p >= 1.0)) throw DomainError("oscillationOnBall: p must be >= 1");
  if (auto k = b.constantValue()) {
    return std::abs(*k - c) * std::pow(ballVolume(ball.dim(), ball.radius()), 1.0 / p);
  }
  const QuadResult r = integrateOverBall(
      ball,
      [&b, c, p](const Point& y) {
        const double v = std::abs(b(y) - c);
        return p == 1.0 ? v : std::pow(v, p);
      },
      b.features(), settings);
  return std::pow(std::max(0.0, r.value), 1.0 / p);
}

namespace {
constexpr double kPlateauTolerance = 1e-8;
}  // namespace

NormProfile::NormProfile(Point x, LogGrid g, std::vector<double> v)
    : x0(x), grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw DomainError("NormProfile: one value per grid node required");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw DomainError("NormProfile: non-finite or negative value at r = " + std::to_string(grid[i]));
    }
  }
  supValue = *std::max_element(values.begin(), values.end());
  // First node on a plateau of the max, so rounding noise does not move it.
  std::size_t arg = 0;
  while (values[arg] < supValue * (1.0 - kPlateauTolerance)) ++arg;
  argSup = grid[arg];
  supAtEndpoint = supValue > 0.0 && (arg == 0 || arg + 1 == values.size());
}

NormProfile campanatoNorm(const Symbol& b, double p, double lambda, const Point& x0, const LogGrid& grid,
                          const QuadratureSettings& settings) {
  const int n = b.dim();
  if (!(lambda >= 0.0 && lambda < 1.0 / n)) throw DomainError("campanatoNorm: lambda must lie in [0, 1/n)");
  std::vector<double> values(grid.size(), 0.0);
  if (!b.constantValue()) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Ball ball(x0, grid[i]);
      const double mean = ballMean(b, ball, settings);
      const double osc = oscillationOnBall(b, p, ball, mean, settings);
      values[i] = osc * std::pow(ballVolume(n, grid[i]), -(1.0 + lambda * p) / p);
    }
  }
  return NormProfile(x0, grid, std::move(values));
}

double morreyFunctional(const TestFunction& f, double p, const PhiWeight& phi, const Point& x0, double r,
                        const QuadratureSettings& settings) {
  if (!(r > 0.0)) throw DomainError("morreyFunctional: r must be positive");
  const double norm = lpNormOnBall(f, p, Ball(x0, r), settings);
  return norm * std::pow(ballVolume(f.dim(), r), -1.0 / p) / phi(x0, r);
}

NormProfile localMorreyNorm(const TestFunction& f, double p, const PhiWeight& phi, const Point& x0,
                            const LogGrid& grid, const QuadratureSettings& settings) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = morreyFunctional(f, p, phi, x0, grid[i], settings);
  return NormProfile(x0, grid, std::move(values));
}

VanishingTrend vanishingTrend(const NormProfile& profile, double threshold, double decades) {
  if (!(decades > 0.0) || !(threshold > 0.0)) throw DomainError("vanishingTrend: threshold and decades must be positive");
  const double span = std::pow(10.0, decades);
  if (profile.grid.rMin() * span > 1.0 * (1.0 + 1e-9)) {
    throw DomainError("vanishingTrend: grid does not reach " + std::to_string(decades) + " decades below r = 1");
  }
  const auto& v = profile.values;
  std::size_t top = 0;
  while (top + 1 < v.size() && profile.grid[top + 1] <= profile.grid.rMin() * span * (1.0 + 1e-9)) ++top;

  VanishingTrend out;
  out.smallestValue = v.front();
  out.cutoff = threshold * profile.supValue;
  out.monotone = true;
  for (std::size_t i = 0; i <= top; ++i) {
    out.tailMax = std::max(out.tailMax, v[i]);
    if (i < top && v[i] > 1.1 * v[i + 1]) out.monotone = false;
  }
  out.isVanishing = profile.supValue == 0.0 || (out.monotone && out.smallestValue < out.cutoff);
  return out;
}

namespace {

template <class Pick>
double tailExtremum(const std::function<double(double)>& g, double t, const LogGrid& grid, Pick pick) {
  std::optional<double> best;
  for (double tau : grid.nodes()) {
    if (tau <= t) continue;
    const double v = g(tau);
    best = best ? pick(*best, v) : v;
  }
  if (!best) throw DomainError("tail extremum: no grid node beyond t = " + std::to_string(t));
  return *best;
}

}  // namespace

double essInfOnTail(const std::function<double(double)>& g, double t, const LogGrid& grid) {
  return tailExtremum(g, t, grid, [](double a, double b) { return std::min(a, b); });
}

double maxOnTail(const std::function<double(double)>& g, double t, const LogGrid& grid) {
  return tailExtremum(g, t, grid, [](double a, double b) { return std::max(a, b); });
}

std::string profileToCsv(const NormProfile& profile) {
  std::ostringstream os;
  os.precision(17);
  os << "r,value\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i) os << profile.grid[i] << ',' << profile.values[i] << '\n';
  return os.str();
}

nlohmann::json profileToJson(const NormProfile& profile) {
  nlohmann::json x0 = nlohmann::json::array();
  for (int i = 0; i < profile.x0.dim(); ++i) x0.push_back(profile.x0[i]);
  return {
      {"x0", x0},
      {"r", std::vector<double>(profile.grid.nodes().begin(), profile.grid.nodes().end())},
      {"values", profile.values},
      {"supValue", profile.supValue},
      {"argSup", profile.argSup},
      {"supAtEndpoint", profile.supAtEndpoint},
  };
}

}  // namespace fracmorrey

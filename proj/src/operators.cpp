#include "fracmorrey/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

OperatorConfig::OperatorConfig(RoughKernel k, double a, QuadratureSettings q, LogGrid grid)
    : kernel(std::move(k)), alpha(a), quadrature(q), supGrid(std::move(grid)) {
  const int n = kernel.dim();
  if (!(alpha > 0.0 && alpha < n)) throw DomainError("OperatorConfig: alpha must lie in (0, n)");
}

double majorantConstant(int n, double alpha) {
  return std::pow(unitBallVolume(n), (n - alpha) / n);
}

namespace {

void requireCompatible(const OperatorConfig& cfg, const TestFunction& f, const Point& x,
                       std::span<const Symbol> b) {
  const int n = cfg.dim();
  if (f.dim() != n || x.dim() != n) throw DomainError("operator: dimension mismatch between kernel, f and x");
  for (const Symbol& s : b) {
    if (s.dim() != n) throw DomainError("operator: symbol dimension mismatch");
  }
  if (!f.compactlySupported()) throw DomainError("operator: f must have compact support");
}

bool anyConstant(std::span<const Symbol> b) {
  return std::any_of(b.begin(), b.end(), [](const Symbol& s) { return s.constantValue().has_value(); });
}

/// Integral over supp f (intersected with `window`) of
/// K(theta) * f(y) * prod (b_i(x) - b_i(y)) * |x-y|^{power - n}, with absolute
/// values on every factor when `absolute` is set.
QuadResult kernelIntegral(const OperatorConfig& cfg, const TestFunction& f, const Point& x,
                          std::span<const Symbol> b, bool absolute, double power,
                          const std::optional<Ball>& window) {
  std::vector<Ball> domain(f.support().begin(), f.support().end());
  if (window) domain.push_back(*window);

  Features features = f.features();
  for (const Symbol& s : b) features.merge(s.features());
  // y = x + rho*theta, so x - y points along -theta.
  for (const Point& d : cfg.kernel.breakDirections()) features.directions.push_back(-d);

  std::vector<double> bx;
  bx.reserve(b.size());
  for (const Symbol& s : b) bx.push_back(s(x));

  PolarIntegrand integrand;
  integrand.rayFactor = [&cfg, &x, absolute](const Point& theta) {
    const double w = cfg.kernel.atDirection(x, -theta);
    return absolute ? std::abs(w) : w;
  };
  integrand.g = [&f, &b, &bx, absolute](const Point& y) {
    double v = f(y);
    if (v == 0.0) return 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) v *= bx[i] - b[i](y);
    return absolute ? std::abs(v) : v;
  };
  return integratePolar(x, power, domain, features, integrand, cfg.quadrature);
}

MaximalResult maximalOver(const OperatorConfig& cfg, const TestFunction& f, const Point& x,
                          std::span<const Symbol> b) {
  requireCompatible(cfg, f, x, b);
  MaximalResult out;
  if (anyConstant(b)) return out;

  const int n = cfg.dim();
  double reach = std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (const Ball& s : f.support()) {
    const double d = distance(x, s.center());
    reach = std::min(reach, d + s.radius());
    gap = std::max(gap, d - s.radius());
  }

  std::optional<double> full;
  auto integralUpTo = [&](double t) {
    if (t <= gap) return 0.0;
    if (t >= reach) {
      if (!full) full = kernelIntegral(cfg, f, x, b, true, n, std::nullopt).value;
      return *full;
    }
    return kernelIntegral(cfg, f, x, b, true, n, Ball(x, t)).value;
  };

  const LogGrid fine = cfg.supGrid.refined();
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double t = fine[i];
    const double v = std::pow(ballVolume(n, t), -1.0 + cfg.alpha / n) * integralUpTo(t);
    if (i % 2 == 0 && v > out.value) {
      out.value = v;
      out.argT = t;
    }
    out.refinedValue = std::max(out.refinedValue, v);
  }
  out.relativeChange = out.refinedValue > 0.0 ? (out.refinedValue - out.value) / out.refinedValue : 0.0;
  out.stable = out.relativeChange < 5e-3;
  return out;
}

}  // namespace

double fractionalIntegral(const OperatorConfig& cfg, const TestFunction& f, const Point& x) {
  requireCompatible(cfg, f, x, {});
  return kernelIntegral(cfg, f, x, {}, false, cfg.alpha, std::nullopt).value;
}

double tTildeMajorant(const OperatorConfig& cfg, const TestFunction& f, const Point& x) {
  requireCompatible(cfg, f, x, {});
  return kernelIntegral(cfg, f, x, {}, true, cfg.alpha, std::nullopt).value;
}

double multilinearCommutator(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                             const Point& x) {
  requireCompatible(cfg, f, x, b);
  if (b.empty()) throw DomainError("multilinearCommutator: need at least one symbol");
  if (anyConstant(b)) return 0.0;
  return kernelIntegral(cfg, f, x, b, false, cfg.alpha, std::nullopt).value;
}

MaximalResult fractionalMaximalDetailed(const OperatorConfig& cfg, const TestFunction& f, const Point& x) {
  return maximalOver(cfg, f, x, {});
}

double fractionalMaximal(const OperatorConfig& cfg, const TestFunction& f, const Point& x) {
  return fractionalMaximalDetailed(cfg, f, x).value;
}

MaximalResult maximalCommutatorDetailed(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                                        const Point& x) {
  if (b.empty()) throw DomainError("maximalCommutator: need at least one symbol");
  return maximalOver(cfg, f, x, b);
}

double maximalCommutator(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                         const Point& x) {
  return maximalCommutatorDetailed(cfg, b, f, x).value;
}

}  // namespace fracmorrey

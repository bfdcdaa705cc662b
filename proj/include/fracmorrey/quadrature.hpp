#pragma once

// Adaptive quadrature over balls, including weakly singular kernels
// |x - y|^{alpha - n}. Everything is done in polar coordinates about a chosen
// origin: y = origin + rho * theta. Measure Jacobian rho^{n-1} times the kernel
// rho^{alpha-n} leaves rho^{alpha-1}, integrable at 0 for alpha > 0, and for
// alpha < 1 the substitution u = rho^alpha removes it entirely.

#include <functional>
#include <span>
#include <vector>

#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

struct QuadOptions {
  double relTol = 1e-6;
  double absTol = 1e-12;
  int maxPanels = 4000;
  /// Map each initial panel [a, b] through a + (b - a)(3u^2 - 2u^3), u in [0, 1].
  /// An endpoint singularity d^beta becomes u^{2 beta + 1}, which is what the
  /// kinks and support edges at panel breaks look like after integration.
  bool smoothEndpoints = false;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  /// Integral of |f|; relative tolerances are measured against it so that
  /// sign cancellation does not force refinement to the budget.
  double l1 = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Globally adaptive 21-point Gauss-Kronrod over [breaks.front(), breaks.back()],
/// starting from the panels delimited by `breaks` (sorted, at least two).
/// Never throws on non-convergence; inspect `converged`.
QuadResult adaptiveIntegrate(const std::function<double(double)>& f, std::span<const double> breaks,
                             const QuadOptions& options = {});

/// Convenience overload for a single interval; throws QuadratureError when
/// the tolerance is not met.
double integrate1d(const std::function<double(double)>& f, double a, double b, const QuadOptions& options = {});

/// Fixed 8-point Gauss-Legendre on [a, b].
double gaussLegendre8(const std::function<double(double)>& f, double a, double b);

/// Hyperplane {y : y[axis] = offset}.
struct Hyperplane {
  int axis = 0;
  double offset = 0.0;
};

/// Loci where an integrand fails to be smooth. Quadrature splits rays and
/// angular ranges there so each panel sees a smooth integrand.
struct Features {
  std::vector<Ball> spheres;
  std::vector<Point> points;
  std::vector<Hyperplane> planes;
  /// Unit directions theta (of y - origin) across which the ray factor jumps.
  std::vector<Point> directions;

  Features& merge(const Features& other);
  Features scaled(double factor) const;
};

struct QuadratureSettings {
  double relTol = 1e-6;
  double absTol = 1e-12;
  int maxPanels = 4000;
  /// Radial integrals run at relTol * innerTolFactor.
  double innerTolFactor = 1e-2;
  /// Initial angular subdivision of S^1 (ignored for n = 1).
  int angularPanels = 8;
};

/// Integrand for polar integration: rayFactor(theta) * g(y), theta = (y - origin)/|y - origin|.
/// An empty rayFactor means 1.
struct PolarIntegrand {
  std::function<double(const Point& theta)> rayFactor;
  std::function<double(const Point& y)> g;
};

/// Integral over the intersection of `domain` balls of
///   rayFactor(theta) g(y) |y - origin|^{alpha - n} dy.
/// alpha = n gives a plain volume integral. The origin may lie anywhere.
QuadResult integratePolar(const Point& origin, double alpha, std::span<const Ball> domain, const Features& features,
                          const PolarIntegrand& integrand, const QuadratureSettings& settings = {});

/// Plain integral of g over a ball.
QuadResult integrateOverBall(const Ball& ball, const std::function<double(const Point&)>& g,
                             const Features& features = {}, const QuadratureSettings& settings = {});

/// Integral over `ball` of g(y) / |singularity - y|^{exponent}, exponent = n - alpha in (0, n).
struct SingularQuadrature {
  Ball ball;
  Point singularity;
  double exponent;
  /// Initial angular panels; its node count seeds the angular subdivision.
  SphereRule angular;
  QuadratureSettings settings{};
  Features features{};

  SingularQuadrature(Ball ball, Point singularity, double exponent, QuadratureSettings settings = {});
};

double integrateSingular(const SingularQuadrature& q, const std::function<double(const Point&)>& g);
QuadResult integrateSingularDetailed(const SingularQuadrature& q, const std::function<double(const Point&)>& g);

}  // namespace fracmorrey

#pragma once

// Tail integrals over (a, infinity) that appear on the right-hand sides of the
// local estimates and in the weight-pair conditions.

#include <functional>
#include <span>
#include <vector>

namespace fracmorrey {

/// Composite Gauss-Legendre in ln t for
///   integral_a^inf (1 + ln(t/r))^m t^e N(t) dt,
/// where N(t) is constant for t >= supportReach (compactly supported f), so
/// the part beyond supportReach is summed in closed form.
struct RhsIntegralScheme {
  int panelsPerDecade = 6;
  /// Relative change under panel doubling above which the result is flagged.
  double refinementTolerance = 5e-3;
};

struct TailIntegral {
  double value = 0.0;
  /// integral over [a, supportReach]
  double quadraturePart = 0.0;
  /// closed-form part beyond supportReach
  double analyticPart = 0.0;
  double refinedValue = 0.0;
  double relativeChange = 0.0;
  bool refinementOk = true;
};

/// Requires e < -1. `kinks` are radii where N is not smooth.
TailIntegral lpTailIntegral(const std::function<double(double)>& N, double a, double r, int m, double e,
                            double supportReach, std::span<const double> kinks, const RhsIntegralScheme& scheme = {});

/// integral_T^inf (L0 + ln(t/T))^m t^e dt for e < -1.
double powerLogTail(double T, double L0, int m, double e);

/// Tail integrals whose integrand is only known pointwise (weight conditions).
struct PhiTailScheme {
  int nodesPerDecade = 16;
  /// Stop once t * g(t) has dropped below this fraction of its peak.
  double truncationRelative = 1e-12;
  /// Hard cap on t / a.
  double maxRatio = 1e60;
  /// Local decay exponent at or below which the tail counts as divergent.
  double divergenceKappa = 1e-2;
};

struct PhiTailResult {
  double value = 0.0;
  /// estimate of the integral beyond the truncation radius
  double remainder = 0.0;
  double truncationRadius = 0.0;
  /// kappa in t * g(t) ~ t^{-kappa} over the last decade
  double decayExponent = 0.0;
  bool converged = true;
};

/// Geometric nodes a * 10^{k / nodesPerDecade} up to a * maxRatio, with
/// `extraBreaks` (> a) merged in.
std::vector<double> tailNodes(double a, std::span<const double> extraBreaks, const PhiTailScheme& scheme);

/// integral over (nodes.front(), inf) of g, where g(t, k) is evaluated on the
/// panel [nodes[k], nodes[k+1]]. Panels are integrated with 8-point
/// Gauss-Legendre in ln t.
PhiTailResult integrateDecayingTail(const std::function<double(double, std::size_t)>& g,
                                    std::span<const double> nodes, const PhiTailScheme& scheme);

}  // namespace fracmorrey

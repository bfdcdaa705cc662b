#pragma once

// L_p norms on balls, ball means, local Campanato and generalized local
// Morrey norms, and the discrete tail extrema used by the weight conditions.

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "fracmorrey/geometry.hpp"
#include "fracmorrey/quadrature.hpp"
#include "fracmorrey/symbols.hpp"

namespace fracmorrey {

/// ( integral over ball of |f|^p )^{1/p}
double lpNormOnBall(const TestFunction& f, double p, const Ball& ball, const QuadratureSettings& settings = {});

/// Average of b over the ball.
double ballMean(const Symbol& b, const Ball& ball, const QuadratureSettings& settings = {});

/// ( integral over ball of |b - c|^p )^{1/p}
double oscillationOnBall(const Symbol& b, double p, const Ball& ball, double c,
                         const QuadratureSettings& settings = {});

/// Per-radius values of a sup_{r>0} functional on a log grid.
struct NormProfile {
  Point x0;
  LogGrid grid;
  std::vector<double> values;
  double supValue = 0.0;
  double argSup = 0.0;
  /// The sup sits at the first or last grid node, so it may be a truncation artifact.
  bool supAtEndpoint = false;

  NormProfile(Point x0, LogGrid grid, std::vector<double> values);
};

/// ( |B(x0,r)|^{-(1+lambda p)} integral over B(x0,r) of |b - b_B|^p )^{1/p} per radius.
NormProfile campanatoNorm(const Symbol& b, double p, double lambda, const Point& x0, const LogGrid& grid,
                          const QuadratureSettings& settings = {});

/// phi(x0,r)^{-1} |B(x0,r)|^{-1/p} ||f||_{L_p(B(x0,r))}
double morreyFunctional(const TestFunction& f, double p, const PhiWeight& phi, const Point& x0, double r,
                        const QuadratureSettings& settings = {});

NormProfile localMorreyNorm(const TestFunction& f, double p, const PhiWeight& phi, const Point& x0,
                            const LogGrid& grid, const QuadratureSettings& settings = {});

struct VanishingTrend {
  bool isVanishing = false;
  /// max of the profile over the examined bottom decades
  double tailMax = 0.0;
  double smallestValue = 0.0;
  /// threshold * supValue
  double cutoff = 0.0;
  bool monotone = false;
};

/// Examines the nodes within `decades` decades of the smallest radius. The
/// profile must reach at least `decades` decades below r = 1.
VanishingTrend vanishingTrend(const NormProfile& profile, double threshold = 1e-2, double decades = 2.0);

/// min of g over grid nodes tau > t (the open tail).
double essInfOnTail(const std::function<double(double)>& g, double t, const LogGrid& grid);
/// max of g over grid nodes tau > t.
double maxOnTail(const std::function<double(double)>& g, double t, const LogGrid& grid);

/// Two columns r,value with a header line.
std::string profileToCsv(const NormProfile& profile);
nlohmann::json profileToJson(const NormProfile& profile);

}  // namespace fracmorrey

#pragma once

// Empirical checks of the boundedness inequalities and weight conditions.
// An existential constant C is operationalized as a bounded ratio family:
// fittedConstant = max LHS/RHS and stabilityRatio = max/median must stay
// below a ceiling across the sampled radii, points and dilations.

#include <span>
#include <vector>

#include "fracmorrey/operators.hpp"
#include "fracmorrey/report.hpp"
#include "fracmorrey/spaces.hpp"
#include "fracmorrey/symbols.hpp"
#include "fracmorrey/tail.hpp"

namespace fracmorrey {

struct HarnessOptions {
  double stabilityCeiling = 3.0;
  /// Quadrature for integrals of operator outputs over x (the inner operator
  /// evaluations use the OperatorConfig settings).
  QuadratureSettings outer{1e-5, 1e-14, 4000, 1e-2, 8};
  RhsIntegralScheme rhs{};
  PhiTailScheme phiTail{};
  /// The L_q(R^n) norm is integrated over B(0, factor * support radius) plus a far-field tail.
  double lebesgueTruncation = 8.0;
  /// Slack on the fitted constant for the size condition and majorant domination.
  double sizeTolerance = 1e-5;
  /// Nodes on S^{n-1} for the kernel norm sup.
  int sphereNodes = 512;
  /// Radii for the Campanato sup norms of the symbols.
  LogGrid campanatoGrid = logGrid(0x1p-10, 0x1p10, 41);
  /// Grids for the weight-pair preconditions of the Morrey-space checks.
  LogGrid pairGrid = logGrid(1e-4, 1e4, 17);
  LogGrid smallGrid = logGrid(1e-12, 1.0, 49);
};

/// |T f(x)| <= T~|f|(x) for x outside supp f.
CheckReport checkSizeCondition(const OperatorConfig& cfg, const TestFunction& f, std::span<const Point> xSamples,
                               const HarnessOptions& options = {});

/// M f(x) <= v_n^{-(n-alpha)/n} T~|f|(x) at every sample point.
CheckReport checkMajorantDomination(const OperatorConfig& cfg, const TestFunction& f, std::span<const Point> xSamples,
                                    const HarnessOptions& options = {});

/// ||T f||_{L_q} / (||Omega|| ||f||_{L_p}) over f in the family and its dilates f(lambda .).
CheckReport checkLebesgueBoundedness(const OperatorConfig& cfg, const LebesgueExponents& exps,
                                     std::span<const TestFunction> family, std::span<const double> lambdas,
                                     const HarnessOptions& options = {});

/// ||Omega(x, x - .)||_{L_s(B(x0,t))} / (||Omega|| |B(x0,2t)|^{1/s}) for x in B(x0, t).
CheckReport checkKernelShellBound(const RoughKernel& kernel, double s, std::span<const Point> xSamples,
                                  const LogGrid& tGrid, const Point& x0, const HarnessOptions& options = {});

enum class CampanatoEstimate { A, B, C };

/// The three logarithmic estimates for local Campanato functions, over all
/// radius pairs (r1, r2) from `radii`. ||b|| is the Campanato sup over `radii`.
CheckReport checkCampanato(CampanatoEstimate which, const Symbol& b, double p, double lambda, const Point& x0,
                           const LogGrid& radii, const HarnessOptions& options = {});
inline CheckReport checkCampanatoA(const Symbol& b, double p, double lambda, const Point& x0, const LogGrid& radii,
                                   const HarnessOptions& options = {}) {
  return checkCampanato(CampanatoEstimate::A, b, p, lambda, x0, radii, options);
}
inline CheckReport checkCampanatoB(const Symbol& b, double p, double lambda, const Point& x0, const LogGrid& radii,
                                   const HarnessOptions& options = {}) {
  return checkCampanato(CampanatoEstimate::B, b, p, lambda, x0, radii, options);
}
inline CheckReport checkCampanatoC(const Symbol& b, double p, double lambda, const Point& x0, const LogGrid& radii,
                                   const HarnessOptions& options = {}) {
  return checkCampanato(CampanatoEstimate::C, b, p, lambda, x0, radii, options);
}

/// Local estimate for T on balls B(x0, r). For each dilation lambda the dilate
/// f(lambda .) is sampled on B(x0/lambda, r/lambda), which makes the ratio
/// exactly lambda-independent for x-independent kernels.
CheckReport checkLocalBoundLemma1(const OperatorConfig& cfg, const LebesgueExponents& exps, const TestFunction& f,
                                  const Point& x0, const LogGrid& rGrid, std::span<const double> lambdas,
                                  const HarnessOptions& options = {});

/// Local estimate for the multilinear commutator on balls B(x0, r).
CheckReport checkCommutatorBoundLemma2(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                       const TestFunction& f, const Point& x0, const LogGrid& rGrid,
                                       std::span<const double> lambdas, const HarnessOptions& options = {});

/// The weight-pair condition for boundedness between generalized local Morrey spaces.
CheckReport checkPhiPairCondition(const ExponentSet& exps, const PhiWeight& phi1, const PhiWeight& phi2,
                                  const Point& x0, const LogGrid& rGrid, const HarnessOptions& options = {});

/// The weight-pair conditions for the vanishing spaces: the integral bound on
/// rGrid, the log limit on smallGrid, and finiteness of c_delta for
/// delta in {1/4, 1, 4}.
CheckReport checkPhiPairVanishing(const ExponentSet& exps, const PhiWeight& phi1, const PhiWeight& phi2,
                                  const Point& x0, const LogGrid& rGrid, const LogGrid& smallGrid,
                                  const HarnessOptions& options = {});

/// ||[b, T] f||_{LM_{q1,phi2}} / (prod ||b_i|| ||f||_{LM_{p,phi1}}) over dilates f(lambda .).
CheckReport checkMorreyBoundedness(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                   const TestFunction& f, const PhiWeight& phi1, const PhiWeight& phi2,
                                   const Point& x0, const LogGrid& profileGrid, std::span<const double> lambdas,
                                   const HarnessOptions& options = {});

/// If the input Morrey profile vanishes at r -> 0, so does the commutator output profile.
CheckReport checkVanishingImplication(const OperatorConfig& cfg, const ExponentSet& exps, std::span<const Symbol> b,
                                      const TestFunction& f, const PhiWeight& phi1, const PhiWeight& phi2,
                                      const Point& x0, const LogGrid& profileGrid,
                                      const HarnessOptions& options = {});

/// Campanato sup norms of the symbols (one per b_i, with the exponents of `exps`).
std::vector<double> campanatoNorms(std::span<const Symbol> b, const ExponentSet& exps, const Point& x0,
                                   const LogGrid& grid, const QuadratureSettings& settings = {});

/// (integral over B(x0, r) of |F|^q)^{1/q} for each r in grid, accumulated
/// annulus by annulus. `features` are the non-smooth loci of F.
std::vector<double> lqNormProfile(const std::function<double(const Point&)>& F, double q, const Point& x0,
                                  const LogGrid& grid, const Features& features, const QuadratureSettings& settings);

}  // namespace fracmorrey

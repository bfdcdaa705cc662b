#pragma once

// Fractional integral, fractional maximal function, the majorant T~ and the
// multilinear commutators, all with a rough variable kernel Omega(x, x - y).
// Every integral is taken in polar coordinates about the evaluation point x,
// so the weak singularity |x - y|^{alpha - n} never reaches the integrand.

#include <span>

#include "fracmorrey/geometry.hpp"
#include "fracmorrey/quadrature.hpp"
#include "fracmorrey/symbols.hpp"

namespace fracmorrey {

struct OperatorConfig {
  RoughKernel kernel;
  double alpha;
  QuadratureSettings quadrature{};
  /// Radii t over which the maximal operators take their supremum.
  LogGrid supGrid = defaultRadiusGrid();

  OperatorConfig(RoughKernel kernel, double alpha, QuadratureSettings quadrature = {},
                 LogGrid supGrid = defaultRadiusGrid());

  int dim() const noexcept { return kernel.dim(); }
};

/// integral of Omega(x, x-y) |x-y|^{alpha-n} f(y) dy
double fractionalIntegral(const OperatorConfig& cfg, const TestFunction& f, const Point& x);

/// integral of |Omega(x, x-y)| |x-y|^{alpha-n} |f(y)| dy
double tTildeMajorant(const OperatorConfig& cfg, const TestFunction& f, const Point& x);

/// integral of prod_i (b_i(x) - b_i(y)) Omega(x, x-y) |x-y|^{alpha-n} f(y) dy
double multilinearCommutator(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                             const Point& x);

struct MaximalResult {
  /// max over cfg.supGrid
  double value = 0.0;
  double argT = 0.0;
  /// max over the refined grid (every gap bisected)
  double refinedValue = 0.0;
  /// (refinedValue - value) / refinedValue, 0 when both vanish
  double relativeChange = 0.0;
  /// relativeChange < 0.5%
  bool stable = true;
};

/// sup_t |B(x,t)|^{-1+alpha/n} integral over B(x,t) of |Omega(x,x-y)| |f(y)| dy
MaximalResult fractionalMaximalDetailed(const OperatorConfig& cfg, const TestFunction& f, const Point& x);
double fractionalMaximal(const OperatorConfig& cfg, const TestFunction& f, const Point& x);

/// As the fractional maximal operator with the extra factor prod_i |b_i(x) - b_i(y)|.
MaximalResult maximalCommutatorDetailed(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                                        const Point& x);
double maximalCommutator(const OperatorConfig& cfg, std::span<const Symbol> b, const TestFunction& f,
                         const Point& x);

/// C_{n,alpha} = v_n^{(n - alpha)/n}; M f <= C^{-1} T~ |f|.
double majorantConstant(int n, double alpha);

}  // namespace fracmorrey

#pragma once

// Built-in kernels, test functions, symbols and weights, addressable by name.
// They are chosen so that most of the quantities the harness measures have
// closed forms.

#include <map>
#include <string>
#include <vector>

#include "fracmorrey/symbols.hpp"

namespace fracmorrey {

struct CatalogEntryInfo {
  std::string kind;  // kernel, function, symbol or weight
  std::string name;
  std::string description;
  /// Weight parameters with their defaults (empty for other kinds).
  std::map<std::string, double> params;
};

/// Kernels: one, theta1, sign_theta1, xdep.
RoughKernel catalogKernel(const std::string& name, int n);
/// Test functions: indicator, gaussian, trunc_power, cosine, zero.
TestFunction catalogFunction(const std::string& name, int n);
/// Symbols: const, sign, log, trunc_linear.
Symbol catalogSymbol(const std::string& name, int n);
/// Weights: power, rpow, power_log, constant, log_growth, inverse_log, identity.
/// Missing parameters take the defaults listed by catalogListing().
PhiWeight catalogWeight(const std::string& name, const std::map<std::string, double>& params = {});

std::vector<CatalogEntryInfo> catalogListing();

struct Catalog {
  std::map<std::string, RoughKernel> kernels;
  std::map<std::string, TestFunction> functions;
  std::map<std::string, Symbol> symbols;
  /// Weights instantiated with their default parameters.
  std::map<std::string, PhiWeight> weights;
};

Catalog builtinCatalog(int n);

/// The catalog Gaussian is cut off at this radius (e^{-36} is below double eps).
inline constexpr double kGaussianCutoff = 6.0;
/// Value of the catalog constant symbol.
inline constexpr double kConstantSymbolValue = 5.0;

}  // namespace fracmorrey

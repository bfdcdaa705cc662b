#include "fracmorrey/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracmorrey/errors.hpp"
#include "fracmorrey/quadrature.hpp"

namespace fracmorrey {

double powerLogTail(double T, double L0, int m, double e) {
  const double kappa = -(e + 1.0);
  if (!(kappa > 0.0)) throw DomainError("powerLogTail: exponent must be < -1 for a convergent tail");
  if (m < 0) throw DomainError("powerLogTail: m must be non-negative");
  double sum = 0.0;
  double binom = 1.0;      // C(m, k)
  double factorial = 1.0;  // k!
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      binom = binom * (m - k + 1) / k;
      factorial *= k;
    }
    sum += binom * std::pow(L0, m - k) * factorial / std::pow(kappa, k + 1);
  }
  return std::pow(T, e + 1.0) * sum;
}

namespace {

double logPanels(const std::function<double(double)>& h, std::span<const double> breaks, int perDecade) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double u0 = std::log(breaks[i]);
    const double u1 = std::log(breaks[i + 1]);
    const int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / std::log(10.0) * perDecade)));
    const double du = (u1 - u0) / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = u0 + du * k;
      const double b = k + 1 == panels ? u1 : a + du;
      total += gaussLegendre8([&h](double u) { const double t = std::exp(u); return h(t) * t; }, a, b);
    }
  }
  return total;
}

}  // namespace

TailIntegral lpTailIntegral(const std::function<double(double)>& N, double a, double r, int m, double e,
                            double supportReach, std::span<const double> kinks, const RhsIntegralScheme& scheme) {
  if (!(a > 0.0) || !(r > 0.0)) throw DomainError("lpTailIntegral: need a > 0 and r > 0");
  if (!(e < -1.0)) throw DomainError("lpTailIntegral: tail exponent must be < -1");
  if (!(supportReach > 0.0) || !std::isfinite(supportReach)) {
    throw DomainError("lpTailIntegral: f must have compact support");
  }
  TailIntegral out;
  const double T = std::max(a, supportReach);
  out.analyticPart = N(T) * powerLogTail(T, 1.0 + std::log(T / r), m, e);

  if (a < supportReach) {
    std::vector<double> breaks{a};
    for (double k : kinks) {
      if (k > a && k < T) breaks.push_back(k);
    }
    breaks.push_back(T);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto h = [&](double t) { return std::pow(1.0 + std::log(t / r), m) * std::pow(t, e) * N(t); };
    out.quadraturePart = logPanels(h, breaks, scheme.panelsPerDecade);
    const double refinedQuad = logPanels(h, breaks, 2 * scheme.panelsPerDecade);
    out.value = out.quadraturePart + out.analyticPart;
    out.refinedValue = refinedQuad + out.analyticPart;
  } else {
    out.value = out.analyticPart;
    out.refinedValue = out.value;
  }
  out.relativeChange = out.refinedValue != 0.0 ? std::abs(out.refinedValue - out.value) / std::abs(out.refinedValue)
                                               : 0.0;
  out.refinementOk = out.relativeChange <= scheme.refinementTolerance;
  return out;
}

std::vector<double> tailNodes(double a, std::span<const double> extraBreaks, const PhiTailScheme& scheme) {
  if (!(a > 0.0)) throw DomainError("tailNodes: start must be positive");
  const int count = static_cast<int>(std::ceil(std::log10(scheme.maxRatio) * scheme.nodesPerDecade));
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(count) + 1 + extraBreaks.size());
  for (int k = 0; k <= count; ++k) nodes.push_back(a * std::pow(10.0, static_cast<double>(k) / scheme.nodesPerDecade));
  for (double b : extraBreaks) {
    if (b > a && b < nodes.back()) nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::abs(y); }),
              nodes.end());
  return nodes;
}

PhiTailResult integrateDecayingTail(const std::function<double(double, std::size_t)>& g,
                                    std::span<const double> nodes, const PhiTailScheme& scheme) {
  if (nodes.size() < 2) throw DomainError("integrateDecayingTail: need at least one panel");
  PhiTailResult out;
  const double decade = std::log(10.0);
  const double u0 = std::log(nodes.front());
  double peak = 0.0;
  // (u at panel end, average t*g over the panel) for the decay estimate
  std::vector<std::pair<double, double>> history;
  std::size_t k = 0;
  for (; k + 1 < nodes.size(); ++k) {
    const double a = std::log(nodes[k]);
    const double b = std::log(nodes[k + 1]);
    const double I = gaussLegendre8([&](double u) { const double t = std::exp(u); return g(t, k) * t; }, a, b);
    out.value += I;
    const double density = std::abs(I) / (b - a);
    peak = std::max(peak, density);
    history.emplace_back(b, density);
    if (b - u0 >= decade && density <= scheme.truncationRelative * peak) break;
  }
  const std::size_t last = std::min(k, nodes.size() - 2);
  out.truncationRadius = nodes[last + 1];

  const auto [uEnd, dEnd] = history.back();
  if (dEnd == 0.0) {
    out.decayExponent = std::numeric_limits<double>::infinity();
    return out;
  }
  // Compare with the panel roughly one decade earlier.
  std::size_t j = history.size() - 1;
  while (j > 0 && uEnd - history[j].first < decade) --j;
  const auto [uPrev, dPrev] = history[j];
  if (uEnd - uPrev <= 0.0 || dPrev <= 0.0) {
    out.converged = false;
    return out;
  }
  out.decayExponent = -(std::log(dEnd) - std::log(dPrev)) / (uEnd - uPrev);
  if (out.decayExponent > scheme.divergenceKappa) {
    out.remainder = dEnd / out.decayExponent;
    out.value += out.remainder;  // integrands here are non-negative
  } else {
    out.converged = false;
  }
  return out;
}

}  // namespace fracmorrey

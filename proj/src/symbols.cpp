#include "fracmorrey/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

// ---- RoughKernel ---------------------------------------------------------

RoughKernel::RoughKernel(int dim, Evaluator eval, std::string label, std::vector<Point> breakDirections)
    : dim_(dim), eval_(std::move(eval)), label_(std::move(label)), breakDirections_(std::move(breakDirections)) {
  requireSupportedDimension(dim);
}

double RoughKernel::operator()(const Point& x, const Point& z) const {
  const double len = z.norm();
  if (!(len > 0.0)) throw DomainError("RoughKernel: direction z must be non-zero");
  return eval_(x, z * (1.0 / len));
}

double kernelSphereNorm(const RoughKernel& kernel, double s, std::span<const Point> xSamples, const SphereRule& rule) {
  if (xSamples.empty()) throw DomainError("kernelSphereNorm: need at least one x sample");
  if (!(s >= 1.0)) throw DomainError("kernelSphereNorm: s must be >= 1");
  double best = 0.0;
  for (const Point& x : xSamples) {
    const double integral = rule.integrate([&](const Point& theta) {
      return std::pow(std::abs(kernel.atDirection(x, theta)), s);
    });
    best = std::max(best, std::pow(integral, 1.0 / s));
  }
  return best;
}

std::vector<Point> defaultKernelSamples(int n) {
  requireSupportedDimension(n);
  std::vector<Point> out;
  out.push_back(Point::origin(n));
  for (double t : {1.0, -1.0, 2.0, -2.0}) out.push_back(Point::axis(n, 0) * t);
  if (n == 2) {
    for (double a : {2.0, -2.0}) {
      for (double b : {2.0, -2.0}) out.push_back(Point{a, b});
    }
  }
  return out;
}

// ---- TestFunction --------------------------------------------------------

TestFunction::TestFunction(int dim, Evaluator eval, std::vector<Ball> support, Features features, std::string label,
                           NormOracle oracle)
    : dim_(dim),
      eval_(std::move(eval)),
      support_(std::move(support)),
      features_(std::move(features)),
      label_(std::move(label)),
      oracle_(std::move(oracle)) {
  requireSupportedDimension(dim);
  for (const Ball& b : support_) {
    if (b.dim() != dim) throw DomainError("TestFunction: support ball dimension mismatch");
    features_.spheres.push_back(b);
  }
}

double TestFunction::operator()(const Point& y) const {
  for (const Ball& b : support_) {
    if (!b.contains(y)) return 0.0;
  }
  return eval_(y);
}

double TestFunction::supportRadius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const Ball& b : support_) r = std::min(r, b.center().norm() + b.radius());
  return r;
}

std::optional<double> TestFunction::lpNormOracle(double p, const Ball& ball) const {
  if (!oracle_) return std::nullopt;
  return oracle_(p, ball);
}

namespace {

std::string formatNumber(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Features withoutSupport(const Features& all, std::span<const Ball> support) {
  // Support spheres are re-added by the constructor.
  Features out = all;
  out.spheres.erase(out.spheres.end() - static_cast<std::ptrdiff_t>(support.size()), out.spheres.end());
  return out;
}

}  // namespace

TestFunction TestFunction::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
  std::vector<Ball> support;
  for (const Ball& b : support_) support.emplace_back(b.center() * (1.0 / lambda), b.radius() / lambda);
  const int n = dim_;
  NormOracle oracle;
  if (oracle_) {
    oracle = [base = oracle_, lambda, n](double p, const Ball& ball) -> std::optional<double> {
      auto v = base(p, Ball(ball.center() * lambda, ball.radius() * lambda));
      if (!v) return std::nullopt;
      return *v * std::pow(lambda, -n / p);
    };
  }
  return TestFunction(
      dim_, [self = *this, lambda](const Point& y) { return self(y * lambda); }, std::move(support),
      withoutSupport(features_, support_).scaled(1.0 / lambda), label_ + "(" + formatNumber(lambda) + "*y)",
      std::move(oracle));
}

TestFunction TestFunction::scaled(double c) const {
  NormOracle oracle;
  if (oracle_) {
    oracle = [base = oracle_, c](double p, const Ball& ball) -> std::optional<double> {
      auto v = base(p, ball);
      if (!v) return std::nullopt;
      return std::abs(c) * *v;
    };
  }
  return TestFunction(
      dim_, [self = *this, c](const Point& y) { return c * self(y); }, support_, withoutSupport(features_, support_),
      formatNumber(c) + "*" + label_, std::move(oracle));
}

TestFunction TestFunction::absolute() const {
  return TestFunction(
      dim_, [self = *this](const Point& y) { return std::abs(self(y)); }, support_,
      withoutSupport(features_, support_), "|" + label_ + "|", oracle_);
}

TestFunction TestFunction::restrictedTo(const Ball& ball) const {
  std::vector<Ball> support = support_;
  support.push_back(ball);
  return TestFunction(
      dim_, [self = *this](const Point& y) { return self(y); }, std::move(support),
      withoutSupport(features_, support_), label_ + "*chi_B");
}

TestFunction TestFunction::excluding(const Ball& ball) const {
  Features features = withoutSupport(features_, support_);
  features.spheres.push_back(ball);
  return TestFunction(
      dim_, [self = *this, ball](const Point& y) { return ball.contains(y) ? 0.0 : self(y); }, support_,
      std::move(features), label_ + "*chi_{B^c}");
}

TestFunction TestFunction::times(const Symbol& b) const {
  Features features = withoutSupport(features_, support_);
  features.merge(b.features());
  return TestFunction(
      dim_, [self = *this, b](const Point& y) { return self(y) * b(y); }, support_, std::move(features),
      b.label() + "*" + label_);
}

TestFunction linearCombination(double a, const TestFunction& f, double c, const TestFunction& g) {
  if (f.dim() != g.dim()) throw DomainError("linearCombination: dimension mismatch");
  std::vector<Ball> support;
  if (f.compactlySupported() && g.compactlySupported()) {
    support.emplace_back(Point::origin(f.dim()), std::max(f.supportRadius(), g.supportRadius()));
  }
  Features features = f.features();
  features.merge(g.features());
  return TestFunction(
      f.dim(), [f, g, a, c](const Point& y) { return a * f(y) + c * g(y); }, std::move(support), std::move(features),
      formatNumber(a) + "*" + f.label() + "+" + formatNumber(c) + "*" + g.label());
}

// ---- Symbol --------------------------------------------------------------

Symbol::Symbol(int dim, Evaluator eval, Features features, std::string label)
    : dim_(dim), eval_(std::move(eval)), features_(std::move(features)), label_(std::move(label)) {
  requireSupportedDimension(dim);
}

Symbol& Symbol::withConstant(double c) {
  constant_ = c;
  supBound_ = std::abs(c);
  return *this;
}

Symbol& Symbol::withSupBound(double bound) {
  supBound_ = bound;
  return *this;
}

Symbol& Symbol::withMeanOracle(MeanOracle oracle) {
  meanOracle_ = std::move(oracle);
  return *this;
}

Symbol Symbol::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
  Symbol out(
      dim_, [self = *this, lambda](const Point& y) { return self(y * lambda); }, features_.scaled(1.0 / lambda),
      label_ + "(" + formatNumber(lambda) + "*y)");
  out.constant_ = constant_;
  out.supBound_ = supBound_;
  if (meanOracle_) {
    out.meanOracle_ = [base = meanOracle_, lambda](const Ball& ball) {
      return base(Ball(ball.center() * lambda, ball.radius() * lambda));
    };
  }
  return out;
}

// ---- PhiWeight -----------------------------------------------------------

PhiWeight::PhiWeight(Evaluator eval, std::string label, std::map<std::string, double> params)
    : eval_(std::move(eval)), label_(std::move(label)), params_(std::move(params)) {}

double PhiWeight::operator()(const Point& x0, double r) const {
  const double v = eval_(x0, r);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("weight '" + label_ + "' is not strictly positive and finite at r = " + std::to_string(r));
  }
  return v;
}

PhiAdmissibility phiAdmissibility(const PhiWeight& phi, const Point& x0, const LogGrid& grid) {
  if (grid.decades() < 4.0 - 1e-9) throw DomainError("phiAdmissibility: grid must span at least 4 decades");
  const auto nodes = grid.nodes();
  std::vector<double> inv(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) inv[i] = 1.0 / phi(x0, nodes[i]);

  PhiAdmissibility out;
  out.smallestNodeValue = inv.front();
  const auto maxIt = std::max_element(inv.begin(), inv.end());
  out.maxValue = *maxIt;
  out.argMax = nodes[static_cast<std::size_t>(maxIt - inv.begin())];

  // Nodes in the bottom decade [rMin, 10 rMin].
  std::size_t top = 0;
  while (top + 1 < nodes.size() && nodes[top + 1] <= 10.0 * nodes.front() * (1.0 + 1e-9)) ++top;

  bool decreasing = true;
  for (std::size_t i = 0; i < top; ++i) {
    if (inv[i] > inv[i + 1]) decreasing = false;
  }
  out.limitAtZeroOk = decreasing && inv.front() < 1e-3;

  const bool finite = std::all_of(inv.begin(), inv.end(), [](double v) { return std::isfinite(v) && v < 1e300; });
  const bool blowUpAtZero = top > 0 && inv.front() > 1.01 * inv[top];
  out.supBoundedOk = finite && !blowUpAtZero;
  return out;
}

// ---- Exponents -----------------------------------------------------------

std::string toString(Regime r) { return r == Regime::SPrimeLeq ? "sPrimeLEq" : "qLtS"; }

Regime regimeFromString(const std::string& text) {
  if (text == "sPrimeLEq" || text == "sPrimeLeq") return Regime::SPrimeLeq;
  if (text == "q1LtS" || text == "qLtS") return Regime::QLtS;
  throw DomainError("unknown regime '" + text + "' (expected sPrimeLEq, q1LtS or qLtS)");
}

CoupledExponents coupledExponents(int n, double alpha, double p, std::span<const double> pi) {
  double invQ = 1.0 / p;
  for (double v : pi) invQ += 1.0 / v;
  const double invQ1 = invQ - alpha / n;
  if (!(invQ > 0.0) || !(invQ1 > 0.0)) throw DomainError("exponent coupling gives a non-positive 1/q or 1/q1");
  return {1.0 / invQ, 1.0 / invQ1};
}

namespace {

constexpr double kCouplingTolerance = 1e-12;

void requireOpenRange(const std::string& name, double v, double lo, double hi) {
  if (!(v > lo && v < hi)) {
    std::ostringstream os;
    os << name << " = " << v << " must lie in (" << lo << ", " << hi << ")";
    throw DomainError(os.str());
  }
}

void requireBasics(int n, double alpha, double s) {
  requireSupportedDimension(n);
  requireOpenRange("alpha", alpha, 0.0, static_cast<double>(n));
  if (!(s > 1.0)) throw DomainError("s must be > 1");
}

}  // namespace

ExponentSet ExponentSet::make(int n, double alpha, double s, double p, std::vector<double> pi,
                              std::vector<double> lambdas, double q, double q1, Regime regime) {
  requireBasics(n, alpha, s);
  if (pi.empty()) throw DomainError("ExponentSet needs m >= 1 symbol exponents p_i");
  if (lambdas.size() != pi.size()) throw DomainError("ExponentSet: need one lambda_i per p_i");
  const double upper = n / alpha;
  requireOpenRange("p", p, 1.0, upper);
  requireOpenRange("q", q, 1.0, upper);
  requireOpenRange("q1", q1, 1.0, upper);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    requireOpenRange("p_" + std::to_string(i + 1), pi[i], 1.0, upper);
    if (!(lambdas[i] >= 0.0 && lambdas[i] < 1.0 / n)) {
      throw DomainError("lambda_" + std::to_string(i + 1) + " must lie in [0, 1/n)");
    }
  }
  double sumInv = 1.0 / p;
  for (double v : pi) sumInv += 1.0 / v;
  if (std::abs(1.0 / q - sumInv) > kCouplingTolerance) {
    std::ostringstream os;
    os << "relation 1/q = sum 1/p_i + 1/p violated: 1/q = " << 1.0 / q << ", sum = " << sumInv;
    throw DomainError(os.str());
  }
  if (std::abs(1.0 / q1 - (1.0 / q - alpha / n)) > kCouplingTolerance) {
    std::ostringstream os;
    os << "relation 1/q1 = 1/q - alpha/n violated: 1/q1 = " << 1.0 / q1 << ", 1/q - alpha/n = " << 1.0 / q - alpha / n;
    throw DomainError(os.str());
  }
  if (regime == Regime::SPrimeLeq && conjugateExponent(s) > q + kCouplingTolerance) {
    throw DomainError("regime sPrimeLEq requires s' = s/(s-1) <= q");
  }
  if (regime == Regime::QLtS && !(q1 < s)) throw DomainError("regime q1LtS requires q1 < s");

  ExponentSet e;
  e.n_ = n;
  e.alpha_ = alpha;
  e.s_ = s;
  e.p_ = p;
  e.q_ = q;
  e.q1_ = q1;
  e.pi_ = std::move(pi);
  e.lambdas_ = std::move(lambdas);
  e.regime_ = regime;
  return e;
}

ExponentSet ExponentSet::derive(int n, double alpha, double s, double p, std::vector<double> pi,
                                std::vector<double> lambdas, Regime regime) {
  requireBasics(n, alpha, s);
  const CoupledExponents c = coupledExponents(n, alpha, p, pi);
  return make(n, alpha, s, p, std::move(pi), std::move(lambdas), c.q, c.q1, regime);
}

double ExponentSet::sumInversePi() const {
  return std::accumulate(pi_.begin(), pi_.end(), 0.0, [](double acc, double v) { return acc + 1.0 / v; });
}

double ExponentSet::sumLambdas() const { return std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0); }

LebesgueExponents LebesgueExponents::make(int n, double alpha, double s, double p, double q, Regime regime) {
  requireBasics(n, alpha, s);
  requireOpenRange("p", p, 1.0, n / alpha);
  if (std::abs(1.0 / q - (1.0 / p - alpha / n)) > kCouplingTolerance) {
    throw DomainError("relation 1/q = 1/p - alpha/n violated");
  }
  if (!(s > n / (n - alpha))) throw DomainError("kernel integrability needs s > n/(n - alpha)");
  if (regime == Regime::SPrimeLeq && conjugateExponent(s) > p + kCouplingTolerance) {
    throw DomainError("regime sPrimeLEq requires s' <= p");
  }
  if (regime == Regime::QLtS && !(q < s)) throw DomainError("regime qLtS requires q < s");
  LebesgueExponents e;
  e.n_ = n;
  e.alpha_ = alpha;
  e.s_ = s;
  e.p_ = p;
  e.q_ = q;
  e.regime_ = regime;
  return e;
}

LebesgueExponents LebesgueExponents::derive(int n, double alpha, double s, double p, Regime regime) {
  requireBasics(n, alpha, s);
  const double invQ = 1.0 / p - alpha / n;
  if (!(invQ > 0.0)) throw DomainError("need p < n/alpha");
  return make(n, alpha, s, p, 1.0 / invQ, regime);
}

}  // namespace fracmorrey

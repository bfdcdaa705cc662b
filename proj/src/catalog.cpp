#include "fracmorrey/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

namespace {

constexpr double kPi = std::numbers::pi;

bool isOrigin(const Point& c) { return c.norm() < 1e-14; }

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// |B(0,1) intersect B(c,r)|
double unitBallOverlap(const Ball& ball) {
  const int n = ball.dim();
  const double r = ball.radius();
  const double d = ball.center().norm();
  if (n == 1) {
    const double c = ball.center()[0];
    return std::max(0.0, std::min(1.0, c + r) - std::max(-1.0, c - r));
  }
  if (d >= 1.0 + r) return 0.0;
  if (d + r <= 1.0) return kPi * r * r;
  if (d + 1.0 <= r) return kPi;
  const double a1 = std::acos(std::clamp((d * d + 1.0 - r * r) / (2.0 * d), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r * r - 1.0) / (2.0 * d * r), -1.0, 1.0));
  const double k = (-d + 1.0 + r) * (d + 1.0 - r) * (d - 1.0 + r) * (d + 1.0 + r);
  return a1 + r * r * a2 - 0.5 * std::sqrt(std::max(0.0, k));
}

TestFunction indicator(int n) {
  auto oracle = [](double p, const Ball& ball) -> std::optional<double> {
    return std::pow(unitBallOverlap(ball), 1.0 / p);
  };
  return TestFunction(
      n, [](const Point&) { return 1.0; }, {Ball(Point::origin(n), 1.0)}, {}, "indicator", oracle);
}

TestFunction gaussian(int n) {
  auto oracle = [n](double p, const Ball& ball) -> std::optional<double> {
    if (!isOrigin(ball.center())) return std::nullopt;
    const double rho = std::min(ball.radius(), kGaussianCutoff);
    const double integral = n == 1 ? std::sqrt(kPi / p) * std::erf(std::sqrt(p) * rho)
                                   : kPi / p * -std::expm1(-p * rho * rho);
    return std::pow(integral, 1.0 / p);
  };
  return TestFunction(
      n, [](const Point& y) { return std::exp(-y.dot(y)); }, {Ball(Point::origin(n), kGaussianCutoff)}, {},
      "gaussian", oracle);
}

TestFunction truncatedPower(int n) {
  const double beta = 0.25 * n;
  Features features;
  features.points.push_back(Point::origin(n));
  auto oracle = [n, beta](double p, const Ball& ball) -> std::optional<double> {
    if (!isOrigin(ball.center())) return std::nullopt;
    const double e = n - beta * p;
    if (!(e > 0.0)) return std::nullopt;
    const double rho = std::min(ball.radius(), 1.0);
    return std::pow(unitSphereMeasure(n) * std::pow(rho, e) / e, 1.0 / p);
  };
  return TestFunction(
      n, [beta](const Point& y) { return std::pow(y.norm(), -beta); }, {Ball(Point::origin(n), 1.0)},
      std::move(features), "trunc_power", oracle);
}

TestFunction cosine(int n) {
  Features features;
  // Zeros of cos(3 y1) inside the unit ball; |f| has kinks there.
  for (double z : {-kPi / 6.0, kPi / 6.0}) features.planes.push_back({0, z});
  return TestFunction(
      n, [](const Point& y) { return std::cos(3.0 * y[0]); }, {Ball(Point::origin(n), 1.0)}, std::move(features),
      "cosine");
}

TestFunction zero(int n) {
  auto oracle = [](double, const Ball&) -> std::optional<double> { return 0.0; };
  return TestFunction(
      n, [](const Point&) { return 0.0; }, {Ball(Point::origin(n), 1.0)}, {}, "zero", oracle);
}

Symbol constantSymbol(int n) {
  Symbol b(
      n, [](const Point&) { return kConstantSymbolValue; }, {}, "const");
  b.withConstant(kConstantSymbolValue);
  b.withMeanOracle([](const Ball&) -> std::optional<double> { return kConstantSymbolValue; });
  return b;
}

Symbol signSymbol(int n) {
  Features features;
  features.planes.push_back({0, 0.0});
  Symbol b(
      n, [](const Point& y) { return sgn(y[0]); }, std::move(features), "sign");
  b.withSupBound(1.0);
  b.withMeanOracle([n](const Ball& ball) -> std::optional<double> {
    const double c = ball.center()[0];
    const double r = ball.radius();
    if (n == 1) return std::clamp(c / r, -1.0, 1.0);
    const double h = std::abs(c);
    if (h >= r) return sgn(c);
    const double segment = r * r * std::acos(h / r) - h * std::sqrt(r * r - h * h);
    return sgn(c) * (kPi * r * r - 2.0 * segment) / (kPi * r * r);
  });
  return b;
}

Symbol logSymbol(int n) {
  Features features;
  features.points.push_back(Point::origin(n));
  Symbol b(
      n, [](const Point& y) { return std::log(std::max(y.norm(), 1e-300)); }, std::move(features), "log");
  b.withMeanOracle([n](const Ball& ball) -> std::optional<double> {
    const double r = ball.radius();
    if (n == 1) {
      auto F = [](double y) { return y == 0.0 ? 0.0 : y * std::log(std::abs(y)) - y; };
      const double c = ball.center()[0];
      return (F(c + r) - F(c - r)) / (2.0 * r);
    }
    if (!isOrigin(ball.center())) return std::nullopt;
    return std::log(r) - 0.5;
  });
  return b;
}

Symbol truncatedLinear(int n) {
  Features features;
  features.planes.push_back({0, -1.0});
  features.planes.push_back({0, 1.0});
  Symbol b(
      n, [](const Point& y) { return std::clamp(y[0], -1.0, 1.0); }, std::move(features), "trunc_linear");
  b.withSupBound(1.0);
  b.withMeanOracle([n](const Ball& ball) -> std::optional<double> {
    const double c = ball.center()[0];
    if (c == 0.0) return 0.0;
    if (n != 1) return std::nullopt;
    auto G = [](double y) { return y <= -1.0 ? -y - 0.5 : (y >= 1.0 ? y - 0.5 : 0.5 * y * y); };
    const double r = ball.radius();
    return (G(c + r) - G(c - r)) / (2.0 * r);
  });
  return b;
}

const std::map<std::string, std::map<std::string, double>>& weightDefaults() {
  static const std::map<std::string, std::map<std::string, double>> defaults{
      {"power", {{"n", 1.0}, {"p", 2.0}, {"lambda", 0.0}}},
      {"rpow", {{"a", -0.5}}},
      {"power_log", {{"a", 0.5}, {"c", 1.0}}},
      {"constant", {{"c", 1.0}}},
      {"log_growth", {}},
      {"inverse_log", {}},
      {"identity", {}},
  };
  return defaults;
}

}  // namespace

RoughKernel catalogKernel(const std::string& name, int n) {
  requireSupportedDimension(n);
  if (name == "one") return RoughKernel(n, [](const Point&, const Point&) { return 1.0; }, "one");
  if (name == "theta1") return RoughKernel(n, [](const Point&, const Point& t) { return t[0]; }, "theta1");
  if (name == "sign_theta1") {
    std::vector<Point> breaks;
    if (n == 2) breaks = {Point{0.0, 1.0}, Point{0.0, -1.0}};
    return RoughKernel(
        n, [](const Point&, const Point& t) { return sgn(t[0]); }, "sign_theta1", std::move(breaks));
  }
  if (name == "xdep") {
    return RoughKernel(
        n, [](const Point& x, const Point& t) { return 1.0 + std::sin(x.norm()) * t[0]; }, "xdep");
  }
  throw DomainError("unknown kernel '" + name + "'");
}

TestFunction catalogFunction(const std::string& name, int n) {
  requireSupportedDimension(n);
  if (name == "indicator") return indicator(n);
  if (name == "gaussian") return gaussian(n);
  if (name == "trunc_power") return truncatedPower(n);
  if (name == "cosine") return cosine(n);
  if (name == "zero") return zero(n);
  throw DomainError("unknown test function '" + name + "'");
}

Symbol catalogSymbol(const std::string& name, int n) {
  requireSupportedDimension(n);
  if (name == "const") return constantSymbol(n);
  if (name == "sign") return signSymbol(n);
  if (name == "log") return logSymbol(n);
  if (name == "trunc_linear") return truncatedLinear(n);
  throw DomainError("unknown symbol '" + name + "'");
}

PhiWeight catalogWeight(const std::string& name, const std::map<std::string, double>& params) {
  const auto& defaults = weightDefaults();
  const auto it = defaults.find(name);
  if (it == defaults.end()) throw DomainError("unknown weight '" + name + "'");
  std::map<std::string, double> P = it->second;
  for (const auto& [key, value] : params) {
    if (!P.count(key)) throw DomainError("weight '" + name + "' has no parameter '" + key + "'");
    P[key] = value;
  }

  if (name == "power") {
    if (!(P["p"] >= 1.0)) throw DomainError("weight 'power' needs p >= 1");
    const double e = (P["lambda"] - P["n"]) / P["p"];
    return PhiWeight([e](const Point&, double r) { return std::pow(r, e); }, name, P);
  }
  if (name == "rpow") {
    const double a = P["a"];
    return PhiWeight([a](const Point&, double r) { return std::pow(r, a); }, name, P);
  }
  if (name == "power_log") {
    const double a = P["a"];
    const double c = P["c"];
    return PhiWeight(
        [a, c](const Point&, double r) {
          return std::pow(r, -a) * std::pow(1.0 + std::max(0.0, -std::log(r)), -c);
        },
        name, P);
  }
  if (name == "constant") {
    const double c = P["c"];
    return PhiWeight([c](const Point&, double) { return c; }, name, P);
  }
  if (name == "log_growth") {
    return PhiWeight([](const Point&, double r) { return std::log(std::numbers::e + 1.0 / r); }, name, P);
  }
  if (name == "inverse_log") {
    return PhiWeight([](const Point&, double r) { return 1.0 / std::log(std::numbers::e + 1.0 / r); }, name, P);
  }
  return PhiWeight([](const Point&, double r) { return r; }, name, P);
}

std::vector<CatalogEntryInfo> catalogListing() {
  std::vector<CatalogEntryInfo> out{
      {"kernel", "one", "Omega(x, theta) = 1", {}},
      {"kernel", "theta1", "Omega(x, theta) = theta_1", {}},
      {"kernel", "sign_theta1", "Omega(x, theta) = sign(theta_1)", {}},
      {"kernel", "xdep", "Omega(x, theta) = 1 + sin(|x|) theta_1", {}},
      {"function", "indicator", "chi_{B(0,1)}", {}},
      {"function", "gaussian", "exp(-|y|^2), cut off at |y| = 6", {}},
      {"function", "trunc_power", "|y|^{-n/4} chi_{B(0,1)}", {}},
      {"function", "cosine", "cos(3 y_1) chi_{B(0,1)}", {}},
      {"function", "zero", "0 (declared support B(0,1))", {}},
      {"symbol", "const", "b = 5", {}},
      {"symbol", "sign", "b = sign(y_1)", {}},
      {"symbol", "log", "b = ln|y|", {}},
      {"symbol", "trunc_linear", "b = clamp(y_1, -1, 1)", {}},
  };
  const std::map<std::string, std::string> descriptions{
      {"power", "r^{(lambda - n)/p}"},
      {"rpow", "r^a"},
      {"power_log", "r^{-a} (1 + ln+(1/r))^{-c}"},
      {"constant", "c"},
      {"log_growth", "ln(e + 1/r)"},
      {"inverse_log", "1 / ln(e + 1/r)"},
      {"identity", "r"},
  };
  for (const auto& [name, params] : weightDefaults()) {
    out.push_back({"weight", name, descriptions.at(name), params});
  }
  return out;
}

Catalog builtinCatalog(int n) {
  Catalog c;
  for (const char* k : {"one", "theta1", "sign_theta1", "xdep"}) c.kernels.emplace(k, catalogKernel(k, n));
  for (const char* f : {"indicator", "gaussian", "trunc_power", "cosine", "zero"}) {
    c.functions.emplace(f, catalogFunction(f, n));
  }
  for (const char* b : {"const", "sign", "log", "trunc_linear"}) c.symbols.emplace(b, catalogSymbol(b, n));
  for (const auto& [name, params] : weightDefaults()) {
    std::map<std::string, double> p;
    if (name == "power") p = {{"n", static_cast<double>(n)}};
    c.weights.emplace(name, catalogWeight(name, p));
  }
  return c;
}

}  // namespace fracmorrey

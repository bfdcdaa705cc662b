#include "fracmorrey/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
};

/// Nodes and weights of the 21-point Kronrod rule with its embedded 10-point
/// Gauss weights, on [0, 1] of the symmetric rule (index 0 is the centre).
struct KronrodTable {
  std::vector<double> x;
  std::vector<double> wk;
  std::vector<double> wg;  // zero where the node is not a Gauss node

  KronrodTable() {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& kx = Kronrod::abscissa();
    const auto& kw = Kronrod::weights();
    x.assign(kx.begin(), kx.end());
    wk.assign(kw.begin(), kw.end());
    wg.assign(x.size(), 0.0);
    const auto& gx = Gauss::abscissa();
    const auto& gw = Gauss::weights();
    for (std::size_t j = 0; j < gx.size(); ++j) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - gx[j]) < 1e-14) wg[i] = gw[j];
      }
    }
  }
};

const KronrodTable& kronrodTable() {
  static const KronrodTable table;
  return table;
}

Panel evaluatePanel(const std::function<double(double)>& f, double a, double b, long& evaluations) {
  const KronrodTable& t = kronrodTable();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (i == 0) {
      const double v = f(centre);
      kronrod += t.wk[0] * v;
      gauss += t.wg[0] * v;
      l1 += t.wk[0] * std::abs(v);
      continue;
    }
    const double dx = half * t.x[i];
    const double lo = f(centre - dx);
    const double hi = f(centre + dx);
    kronrod += t.wk[i] * (lo + hi);
    gauss += t.wg[i] * (lo + hi);
    l1 += t.wk[i] * (std::abs(lo) + std::abs(hi));
  }
  evaluations += 21;
  const double value = kronrod * half;
  if (!std::isfinite(value)) {
    throw QuadratureError("non-finite integrand value on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                          std::numeric_limits<double>::infinity(), 0.0);
  }
  const double error = std::max(std::abs(kronrod - gauss) * half, 50.0 * std::numeric_limits<double>::epsilon() *
                                                                      std::abs(l1 * half));
  return {a, b, value, error, l1 * half};
}

}  // namespace

QuadResult adaptiveIntegrate(const std::function<double(double)>& f, std::span<const double> breaks,
                             const QuadOptions& options) {
  QuadResult result;
  if (breaks.size() < 2) return result;
  if (options.smoothEndpoints) {
    // Panel i of the original breaks becomes u in [i, i + 1].
    std::vector<double> unit(breaks.size());
    for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = static_cast<double>(i);
    const std::vector<double> orig(breaks.begin(), breaks.end());
    auto mapped = [&f, &orig](double u) {
      const std::size_t i = std::min(static_cast<std::size_t>(u), orig.size() - 2);
      const double t = u - static_cast<double>(i);
      const double width = orig[i + 1] - orig[i];
      const double jac = 6.0 * t * (1.0 - t) * width;
      const double y = orig[i] + width * t * t * (3.0 - 2.0 * t);
      // Nodes that round onto a break carry no measure; skip them rather
      // than evaluate an endpoint singularity.
      if (jac == 0.0 || y == orig[i] || y == orig[i + 1]) return 0.0;
      return f(y) * jac;
    };
    QuadOptions plain = options;
    plain.smoothEndpoints = false;
    return adaptiveIntegrate(mapped, unit, plain);
  }

  auto byError = [](const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(byError)> queue(byError);
  std::vector<Panel> finished;

  double total = 0.0;
  double totalError = 0.0;
  double totalL1 = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = evaluatePanel(f, breaks[i], breaks[i + 1], result.evaluations);
    total += p.value;
    totalError += p.error;
    totalL1 += p.l1;
    queue.push(p);
  }

  int panels = static_cast<int>(queue.size());
  while (!queue.empty()) {
    const double target = std::max(options.absTol, options.relTol * totalL1);
    if (totalError <= target) break;
    if (panels >= options.maxPanels) {
      result.converged = false;
      break;
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot split further in floating point; freeze it.
      finished.push_back(worst);
      totalError -= worst.error;
      result.converged = false;
      continue;
    }
    Panel left = evaluatePanel(f, worst.a, mid, result.evaluations);
    Panel right = evaluatePanel(f, mid, worst.b, result.evaluations);
    total += left.value + right.value - worst.value;
    totalError += left.error + right.error - worst.error;
    totalL1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  while (!queue.empty()) {
    finished.push_back(queue.top());
    queue.pop();
  }
  // Fixed summation order: left to right.
  std::sort(finished.begin(), finished.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  result.value = 0.0;
  result.error = 0.0;
  result.l1 = 0.0;
  for (const Panel& p : finished) {
    result.value += p.value;
    result.error += p.error;
    result.l1 += p.l1;
  }
  if (result.error > std::max(options.absTol, options.relTol * result.l1)) result.converged = false;
  return result;
}

double integrate1d(const std::function<double(double)>& f, double a, double b, const QuadOptions& options) {
  const double breaks[] = {a, b};
  QuadResult r = adaptiveIntegrate(f, breaks, options);
  if (!r.converged) {
    throw QuadratureError("integrate1d did not converge", r.error, std::max(options.absTol, options.relTol * r.l1));
  }
  return r.value;
}

double gaussLegendre8(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
}

Features& Features::merge(const Features& other) {
  spheres.insert(spheres.end(), other.spheres.begin(), other.spheres.end());
  points.insert(points.end(), other.points.begin(), other.points.end());
  planes.insert(planes.end(), other.planes.begin(), other.planes.end());
  directions.insert(directions.end(), other.directions.begin(), other.directions.end());
  return *this;
}

Features Features::scaled(double factor) const {
  Features out;
  for (const Ball& b : spheres) out.spheres.emplace_back(b.center() * factor, b.radius() * factor);
  for (const Point& p : points) out.points.push_back(p * factor);
  for (const Hyperplane& h : planes) out.planes.push_back({h.axis, h.offset * factor});
  out.directions = directions;
  return out;
}

namespace {

constexpr double kHuge = std::numeric_limits<double>::max();

/// Parameter interval {rho >= 0 : origin + rho*theta in ball}.
std::optional<std::pair<double, double>> rayChord(const Point& origin, const Point& theta, const Ball& ball) {
  const Point d = origin - ball.center();
  const double bq = theta.dot(d);
  const double cq = d.dot(d) - ball.radius() * ball.radius();
  const double disc = bq * bq - cq;
  if (disc <= 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double lo = std::max(0.0, -bq - s);
  const double hi = -bq + s;
  if (!(hi > lo)) return std::nullopt;
  return std::make_pair(lo, hi);
}

void sphereCrossings(const Point& origin, const Point& theta, const Ball& sphere, std::vector<double>& out) {
  const Point d = origin - sphere.center();
  const double bq = theta.dot(d);
  const double cq = d.dot(d) - sphere.radius() * sphere.radius();
  const double disc = bq * bq - cq;
  if (disc <= 0.0) return;
  const double s = std::sqrt(disc);
  out.push_back(-bq - s);
  out.push_back(-bq + s);
}

/// origin + rho * theta. For tiny rho the sum can round back onto the origin;
/// such coordinates are moved one ulp along theta so that integrands with a
/// jump at the origin see the one-sided value the ray actually approaches.
Point rayPoint(const Point& origin, const Point& theta, double rho) {
  Point y = origin + theta * rho;
  if (rho > 0.0) {
    for (int i = 0; i < y.dim(); ++i) {
      if (theta[i] != 0.0 && y[i] == origin[i]) y[i] = std::nextafter(origin[i], theta[i] > 0.0 ? kHuge : -kHuge);
    }
  }
  return y;
}

/// Radial integral along one ray, including the rho^{alpha-1} weight.
QuadResult radialIntegral(const Point& origin, const Point& theta, double alpha, std::span<const Ball> domain,
                          const Features& features, const std::function<double(const Point&)>& g,
                          const QuadratureSettings& settings) {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (const Ball& b : domain) {
    auto chord = rayChord(origin, theta, b);
    if (!chord) return {};
    lo = std::max(lo, chord->first);
    hi = std::min(hi, chord->second);
    if (!(hi > lo)) return {};
  }

  std::vector<double> cuts;
  for (const Ball& s : features.spheres) sphereCrossings(origin, theta, s, cuts);
  for (const Ball& s : domain) sphereCrossings(origin, theta, s, cuts);
  for (const Point& p : features.points) {
    const Point rel = p - origin;
    const double along = rel.dot(theta);
    const double perp = (rel - theta * along).norm();
    if (perp <= 1e-12 * (1.0 + std::abs(along))) cuts.push_back(along);
  }
  for (const Hyperplane& h : features.planes) {
    if (h.axis < theta.dim() && std::abs(theta[h.axis]) > 1e-15) {
      cuts.push_back((h.offset - origin[h.axis]) / theta[h.axis]);
    }
  }

  std::vector<double> breaks{lo};
  for (double c : cuts) {
    if (c > lo && c < hi) breaks.push_back(c);
  }
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const QuadOptions inner{settings.relTol * settings.innerTolFactor, settings.absTol, settings.maxPanels, true};
  QuadResult r;
  if (alpha < 1.0) {
    // u = rho^alpha: rho^{alpha-1} d rho = du / alpha.
    const double inv = 1.0 / alpha;
    for (double& b : breaks) b = std::pow(b, alpha);
    r = adaptiveIntegrate(
        [&](double u) { return g(rayPoint(origin, theta, std::pow(u, inv))) * inv; }, breaks, inner);
  } else if (alpha == 1.0) {
    r = adaptiveIntegrate([&](double rho) { return g(rayPoint(origin, theta, rho)); }, breaks, inner);
  } else {
    const double power = alpha - 1.0;
    r = adaptiveIntegrate([&](double rho) { return g(rayPoint(origin, theta, rho)) * std::pow(rho, power); }, breaks,
                          inner);
  }
  if (!r.converged && r.error > std::max(settings.absTol, settings.relTol * r.l1)) {
    throw QuadratureError("radial quadrature did not converge", r.error,
                          std::max(settings.absTol, settings.relTol * r.l1));
  }
  return r;
}

double wrapInto(double phi, double a) {
  double shifted = std::fmod(phi - a, kTwoPi);
  if (shifted < 0.0) shifted += kTwoPi;
  return a + shifted;
}

void circleIntersections(const Ball& c1, const Ball& c2, std::vector<Point>& out) {
  const Point delta = c2.center() - c1.center();
  const double d = delta.norm();
  const double r1 = c1.radius();
  const double r2 = c2.radius();
  if (d <= 0.0 || d >= r1 + r2 || d <= std::abs(r1 - r2)) return;
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point u = delta * (1.0 / d);
  const Point perp{-u[1], u[0]};
  const Point base = c1.center() + u * a;
  out.push_back(base + perp * h);
  out.push_back(base - perp * h);
}

void lineIntersections(const Ball& c, const Hyperplane& h, std::vector<Point>& out) {
  const int other = 1 - h.axis;
  const double off = h.offset - c.center()[h.axis];
  const double rem = c.radius() * c.radius() - off * off;
  if (rem <= 0.0) return;
  const double s = std::sqrt(rem);
  Point p(2);
  p[h.axis] = h.offset;
  p[other] = c.center()[other] + s;
  out.push_back(p);
  p[other] = c.center()[other] - s;
  out.push_back(p);
}

}  // namespace

QuadResult integratePolar(const Point& origin, double alpha, std::span<const Ball> domain, const Features& features,
                          const PolarIntegrand& integrand, const QuadratureSettings& settings) {
  const int n = origin.dim();
  requireSupportedDimension(n);
  if (domain.empty()) throw DomainError("integratePolar: the integration domain must be bounded");
  if (!(alpha > 0.0)) throw DomainError("integratePolar: alpha must be positive");

  auto rayFactor = [&](const Point& theta) { return integrand.rayFactor ? integrand.rayFactor(theta) : 1.0; };

  if (n == 1) {
    QuadResult total;
    for (double s : {-1.0, 1.0}) {
      const Point theta{s};
      const double factor = rayFactor(theta);
      if (factor == 0.0) continue;
      QuadResult r = radialIntegral(origin, theta, alpha, domain, features, integrand.g, settings);
      total.value += factor * r.value;
      total.error += std::abs(factor) * r.error;
      total.l1 += std::abs(factor) * r.l1;
      total.evaluations += r.evaluations;
    }
    return total;
  }

  // Admissible angular arc: directions whose rays meet every domain ball.
  double arcLo = 0.0;
  double arcHi = kTwoPi;
  bool restricted = false;
  std::vector<double> candidates;
  auto addTangents = [&](const Ball& b, bool isDomain) {
    const Point rel = b.center() - origin;
    const double d = rel.norm();
    if (d < b.radius() * (1.0 - 1e-14)) return;
    const double psi = std::asin(std::min(1.0, b.radius() / d));
    const double phiC = std::atan2(rel[1], rel[0]);
    candidates.push_back(phiC - psi);
    candidates.push_back(phiC + psi);
    if (!isDomain) return;
    if (!restricted) {
      arcLo = phiC - psi;
      arcHi = phiC + psi;
      restricted = true;
    } else {
      const double mid = 0.5 * (arcLo + arcHi);
      const double c = phiC + kTwoPi * std::round((mid - phiC) / kTwoPi);
      arcLo = std::max(arcLo, c - psi);
      arcHi = std::min(arcHi, c + psi);
    }
  };
  for (const Ball& b : domain) addTangents(b, true);
  if (!(arcHi > arcLo)) return {};
  for (const Ball& b : features.spheres) addTangents(b, false);

  for (const Point& p : features.points) {
    const Point rel = p - origin;
    if (rel.norm() > 0.0) candidates.push_back(std::atan2(rel[1], rel[0]));
  }
  for (const Hyperplane& h : features.planes) {
    const double base = h.axis == 0 ? 0.5 * std::numbers::pi : 0.0;
    candidates.push_back(base);
    candidates.push_back(base + std::numbers::pi);
  }
  for (const Point& dir : features.directions) candidates.push_back(std::atan2(dir[1], dir[0]));

  std::vector<Ball> circles(domain.begin(), domain.end());
  circles.insert(circles.end(), features.spheres.begin(), features.spheres.end());
  std::vector<Point> corners;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) circleIntersections(circles[i], circles[j], corners);
    for (const Hyperplane& h : features.planes) lineIntersections(circles[i], h, corners);
  }
  for (const Point& c : corners) {
    const Point rel = c - origin;
    if (rel.norm() > 0.0) candidates.push_back(std::atan2(rel[1], rel[0]));
  }

  std::vector<double> breaks;
  const int panels = std::max(1, settings.angularPanels);
  for (int k = 0; k <= panels; ++k) breaks.push_back(arcLo + (arcHi - arcLo) * k / panels);
  for (double c : candidates) {
    const double w = wrapInto(c, arcLo);
    if (w > arcLo && w < arcHi) breaks.push_back(w);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               breaks.end());

  long evaluations = 0;
  auto angular = [&](double phi) {
    const Point theta = circlePoint(phi);
    const double factor = rayFactor(theta);
    if (factor == 0.0) return 0.0;
    QuadResult r = radialIntegral(origin, theta, alpha, domain, features, integrand.g, settings);
    evaluations += r.evaluations;
    return factor * r.value;
  };
  const QuadOptions outer{settings.relTol, settings.absTol, settings.maxPanels, true};
  QuadResult r = adaptiveIntegrate(angular, breaks, outer);
  r.evaluations += evaluations;
  if (!r.converged) {
    throw QuadratureError("angular quadrature did not converge", r.error,
                          std::max(settings.absTol, settings.relTol * r.l1));
  }
  return r;
}

QuadResult integrateOverBall(const Ball& ball, const std::function<double(const Point&)>& g,
                             const Features& features, const QuadratureSettings& settings) {
  const Ball domain[] = {ball};
  return integratePolar(ball.center(), static_cast<double>(ball.dim()), domain, features, PolarIntegrand{{}, g},
                        settings);
}

SingularQuadrature::SingularQuadrature(Ball b, Point s, double e, QuadratureSettings qs)
    : ball(std::move(b)),
      singularity(s),
      exponent(e),
      angular(sphereRule(ball.dim(), std::max(2, qs.angularPanels))),
      settings(qs) {
  const int n = ball.dim();
  if (singularity.dim() != n) throw DomainError("SingularQuadrature: dimension mismatch");
  if (!(exponent > 0.0 && exponent < n)) {
    throw DomainError("SingularQuadrature: exponent n - alpha must lie in (0, n)");
  }
}

QuadResult integrateSingularDetailed(const SingularQuadrature& q, const std::function<double(const Point&)>& g) {
  if (distance(q.singularity, q.ball.center()) > q.ball.radius() * (1.0 + 1e-12)) {
    throw DomainError("integrateSingular: singularity must lie in the closed ball");
  }
  const int n = q.ball.dim();
  QuadratureSettings settings = q.settings;
  if (n == 2) settings.angularPanels = static_cast<int>(q.angular.nodes.size());
  const Ball domain[] = {q.ball};
  return integratePolar(q.singularity, n - q.exponent, domain, q.features, PolarIntegrand{{}, g}, settings);
}

double integrateSingular(const SingularQuadrature& q, const std::function<double(const Point&)>& g) {
  return integrateSingularDetailed(q, g).value;
}

}  // namespace fracmorrey

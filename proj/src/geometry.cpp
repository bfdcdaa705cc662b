#include "fracmorrey/geometry.hpp"

#include <algorithm>
#include <string>

#include "fracmorrey/errors.hpp"

namespace fracmorrey {

Point::Point(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDimension) {
    throw DomainError("point dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                      std::to_string(dim));
  }
}

Point::Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::axis(int dim, int axis) {
  Point p(dim);
  p[axis] = 1.0;
  return p;
}

double Point::norm() const noexcept { return std::sqrt(dot(*this)); }

double Point::dot(const Point& other) const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)[i] * other[i];
  return s;
}

Point Point::operator+(const Point& o) const noexcept {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r[i] += o[i];
  return r;
}

Point Point::operator-(const Point& o) const noexcept {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r[i] -= o[i];
  return r;
}

Point Point::operator-() const noexcept { return *this * -1.0; }

Point Point::operator*(double s) const noexcept {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r[i] *= s;
  return r;
}

double distance(const Point& a, const Point& b) noexcept { return (a - b).norm(); }

void requireSupportedDimension(int n) {
  if (n != 1 && n != 2) throw DomainError("unsupported dimension " + std::to_string(n) + " (supported: 1, 2)");
}

Ball::Ball(Point center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball radius must be positive and finite, got " + std::to_string(radius));
  }
}

bool Ball::contains(const Point& y) const noexcept { return distance(y, center_) < radius_; }

double unitBallVolume(int n) {
  requireSupportedDimension(n);
  return n == 1 ? 2.0 : std::numbers::pi;
}

double unitSphereMeasure(int n) {
  requireSupportedDimension(n);
  return n == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

double ballVolume(int n, double r) {
  requireSupportedDimension(n);
  if (!(r > 0.0)) throw DomainError("ballVolume: radius must be positive");
  return unitBallVolume(n) * std::pow(r, n);
}

LogGrid::LogGrid(double rMin, double rMax, int count) {
  if (!(rMin > 0.0) || !(rMax > rMin) || !std::isfinite(rMax) || count < 2) {
    throw DomainError("logGrid: need 0 < rMin < rMax and count >= 2");
  }
  const double logMin = std::log(rMin);
  const double step = (std::log(rMax) - logMin) / (count - 1);
  ratio_ = std::exp(step);
  nodes_.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) nodes_[static_cast<std::size_t>(i)] = std::exp(logMin + step * i);
  nodes_.front() = rMin;
  nodes_.back() = rMax;
}

LogGrid LogGrid::refined() const {
  return LogGrid(rMin(), rMax(), static_cast<int>(2 * nodes_.size() - 1));
}

double LogGrid::decades() const noexcept { return std::log10(rMax() / rMin()); }

LogGrid logGrid(double rMin, double rMax, int count) { return LogGrid(rMin, rMax, count); }

LogGrid defaultRadiusGrid() { return LogGrid(std::ldexp(1.0, -8), std::ldexp(1.0, 8), 33); }

SphereRule sphereRule(int n, int m) {
  requireSupportedDimension(n);
  SphereRule rule;
  rule.dim = n;
  if (n == 1) {
    rule.nodes = {Point{-1.0}, Point{1.0}};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (m < 2) throw DomainError("sphereRule: need at least 2 nodes on S^1");
  const double h = 2.0 * std::numbers::pi / m;
  rule.nodes.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) rule.nodes.push_back(circlePoint(h * k));
  rule.weights.assign(static_cast<std::size_t>(m), h);
  return rule;
}

}  // namespace fracmorrey

#pragma once

// Points, balls, radial grids and sphere rules for the ambient space R^n.
// Only n = 1 and n = 2 carry quadrature support; Point itself stores up to
// three coordinates so higher dimensions are not ruled out structurally.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

namespace fracmorrey {

inline constexpr int kMaxDimension = 3;

class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<double> coords);

  static Point origin(int dim) { return Point(dim); }
  /// Unit vector along axis `axis`.
  static Point axis(int dim, int axis);

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

  double norm() const noexcept;
  double dot(const Point& other) const noexcept;

  Point operator+(const Point& o) const noexcept;
  Point operator-(const Point& o) const noexcept;
  Point operator-() const noexcept;
  Point operator*(double s) const noexcept;
  friend Point operator*(double s, const Point& p) noexcept { return p * s; }

  bool operator==(const Point& o) const noexcept = default;

 private:
  std::array<double, kMaxDimension> c_{};
  int dim_ = 0;
};

double distance(const Point& a, const Point& b) noexcept;

/// Throws DomainError unless n is 1 or 2.
void requireSupportedDimension(int n);

/// Open ball B(center, radius); radius > 0.
class Ball {
 public:
  Ball(Point center, double radius);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  int dim() const noexcept { return center_.dim(); }

  bool contains(const Point& y) const noexcept;
  /// Concentric ball with radius scaled by `factor`.
  Ball scaled(double factor) const { return Ball(center_, radius_ * factor); }

 private:
  Point center_;
  double radius_;
};

/// v_n = |B(0,1)|: 2 for n=1, pi for n=2.
double unitBallVolume(int n);
/// |S^{n-1}| with un-normalized surface measure: 2 for n=1, 2*pi for n=2.
double unitSphereMeasure(int n);
/// |B(x, r)| = v_n r^n.
double ballVolume(int n, double r);

/// Geometrically spaced radii rMin = r_0 < r_1 < ... < r_{count-1} = rMax.
class LogGrid {
 public:
  LogGrid(double rMin, double rMax, int count);

  double rMin() const noexcept { return nodes_.front(); }
  double rMax() const noexcept { return nodes_.back(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  /// node[i+1] / node[i]
  double ratio() const noexcept { return ratio_; }
  /// Grid with the same endpoints and every gap bisected geometrically.
  LogGrid refined() const;
  /// Number of decades spanned, log10(rMax / rMin).
  double decades() const noexcept;

 private:
  std::vector<double> nodes_;
  double ratio_;
};

LogGrid logGrid(double rMin, double rMax, int count);
/// Radii 2^-8 .. 2^8 with 33 nodes.
LogGrid defaultRadiusGrid();

/// Quadrature rule on the unit sphere S^{n-1}. Weights sum to |S^{n-1}|.
struct SphereRule {
  int dim = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
    return sum;
  }
};

/// n = 1: the two points {-1, +1}, unit weights. n = 2: m equally spaced
/// angles 2*pi*k/m with weights 2*pi/m. `m` is ignored for n = 1.
SphereRule sphereRule(int n, int m);

/// Unit vector on S^1 at angle `phi`.
inline Point circlePoint(double phi) { return Point{std::cos(phi), std::sin(phi)}; }

}  // namespace fracmorrey

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracmorrey/geometry.hpp"
#include "fracmorrey/quadrature.hpp"

namespace fracmorrey {

/// Variable kernel Omega(x, z), homogeneous of degree zero in z. It is stored
/// as a function of (x, theta) with theta on the unit sphere, so the only way
/// to evaluate it at a raw z is through z/|z|.
class RoughKernel {
 public:
  using Evaluator = std::function<double(const Point& x, const Point& theta)>;

  RoughKernel(int dim, Evaluator eval, std::string label, std::vector<Point> breakDirections = {});

  /// Omega(x, z) for z != 0.
  double operator()(const Point& x, const Point& z) const;
  /// Omega(x, theta) for a unit vector theta (no normalization).
  double atDirection(const Point& x, const Point& theta) const { return eval_(x, theta); }

  int dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  /// Directions z' across which Omega(x, .) jumps.
  const std::vector<Point>& breakDirections() const noexcept { return breakDirections_; }

 private:
  int dim_;
  Evaluator eval_;
  std::string label_;
  std::vector<Point> breakDirections_;
};

/// sup over xSamples of ( integral over S^{n-1} of |Omega(x, z')|^s )^{1/s}.
double kernelSphereNorm(const RoughKernel& kernel, double s, std::span<const Point> xSamples, const SphereRule& rule);

/// 0, +-e1, +-2e1 and, for n = 2, the corners (+-2, +-2).
std::vector<Point> defaultKernelSamples(int n);

class Symbol;

/// Compactly supported (or explicitly unbounded) test function f.
/// Evaluation outside the declared support returns 0.
class TestFunction {
 public:
  using Evaluator = std::function<double(const Point&)>;
  /// Closed-form ||f||_{L_p(ball)} when available for that (p, ball).
  using NormOracle = std::function<std::optional<double>(double p, const Ball& ball)>;

  /// `support` is an intersection of balls; empty means all of R^n.
  TestFunction(int dim, Evaluator eval, std::vector<Ball> support, Features features, std::string label,
               NormOracle oracle = {});

  double operator()(const Point& y) const;

  int dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  std::span<const Ball> support() const noexcept { return support_; }
  bool compactlySupported() const noexcept { return !support_.empty(); }
  /// Radius of the smallest origin-centred ball containing the support.
  double supportRadius() const;
  /// Non-smooth loci, support boundary included.
  const Features& features() const noexcept { return features_; }
  std::optional<double> lpNormOracle(double p, const Ball& ball) const;

  /// y -> f(lambda * y)
  TestFunction dilated(double lambda) const;
  /// y -> c * f(y)
  TestFunction scaled(double c) const;
  /// y -> |f(y)|
  TestFunction absolute() const;
  /// f * chi_ball
  TestFunction restrictedTo(const Ball& ball) const;
  /// f * chi_{complement of ball}
  TestFunction excluding(const Ball& ball) const;
  /// y -> f(y) * b(y)
  TestFunction times(const Symbol& b) const;

 private:
  int dim_;
  Evaluator eval_;
  std::vector<Ball> support_;
  Features features_;
  std::string label_;
  NormOracle oracle_;
};

/// a*f + c*g, supported in the origin-centred ball enclosing both supports.
TestFunction linearCombination(double a, const TestFunction& f, double c, const TestFunction& g);

/// Locally integrable symbol b (the entries of the commutator vector).
class Symbol {
 public:
  using Evaluator = std::function<double(const Point&)>;
  using MeanOracle = std::function<std::optional<double>(const Ball&)>;

  Symbol(int dim, Evaluator eval, Features features, std::string label);

  double operator()(const Point& y) const { return eval_(y); }

  int dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  const Features& features() const noexcept { return features_; }

  /// Declared constant value; constant symbols have zero oscillation exactly.
  std::optional<double> constantValue() const noexcept { return constant_; }
  /// Declared bound on sup |b|, when b is bounded.
  std::optional<double> supBound() const noexcept { return supBound_; }
  std::optional<double> meanOracle(const Ball& ball) const { return meanOracle_ ? meanOracle_(ball) : std::nullopt; }

  Symbol& withConstant(double c);
  Symbol& withSupBound(double bound);
  Symbol& withMeanOracle(MeanOracle oracle);

  /// y -> b(lambda * y)
  Symbol dilated(double lambda) const;

 private:
  int dim_;
  Evaluator eval_;
  Features features_;
  std::string label_;
  std::optional<double> constant_;
  std::optional<double> supBound_;
  MeanOracle meanOracle_;
};

/// Positive weight phi(x0, r).
class PhiWeight {
 public:
  using Evaluator = std::function<double(const Point& x0, double r)>;

  PhiWeight(Evaluator eval, std::string label, std::map<std::string, double> params = {});

  /// Throws DomainError when the value is not strictly positive and finite.
  double operator()(const Point& x0, double r) const;

  const std::string& label() const noexcept { return label_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }

 private:
  Evaluator eval_;
  std::string label_;
  std::map<std::string, double> params_;
};

struct PhiAdmissibility {
  bool limitAtZeroOk = false;
  bool supBoundedOk = false;
  /// 1/phi at the smallest node.
  double smallestNodeValue = 0.0;
  /// max over the grid of 1/phi and where it is attained.
  double maxValue = 0.0;
  double argMax = 0.0;
};

/// Numerical check of lim_{r->0} 1/phi = 0 and sup_r 1/phi < infinity on a
/// grid spanning at least four decades.
PhiAdmissibility phiAdmissibility(const PhiWeight& phi, const Point& x0, const LogGrid& grid);

/// Which Hoelder regime of the kernel integrability is used:
/// for ExponentSet, SPrimeLeq means s' <= q and QLtS means q1 < s;
/// for LebesgueExponents, SPrimeLeq means s' <= p and QLtS means q < s.
enum class Regime { SPrimeLeq, QLtS };

std::string toString(Regime r);
Regime regimeFromString(const std::string& text);

inline double conjugateExponent(double s) { return s / (s - 1.0); }

struct CoupledExponents {
  double q;
  double q1;
};

/// Pure arithmetic of 1/q = sum 1/p_i + 1/p and 1/q1 = 1/q - alpha/n.
CoupledExponents coupledExponents(int n, double alpha, double p, std::span<const double> pi);

/// Full exponent tuple for the multilinear commutator estimates.
class ExponentSet {
 public:
  /// Validates every coupling and range; throws DomainError on violation.
  static ExponentSet make(int n, double alpha, double s, double p, std::vector<double> pi,
                          std::vector<double> lambdas, double q, double q1, Regime regime);
  /// Computes q and q1 from the couplings, then validates.
  static ExponentSet derive(int n, double alpha, double s, double p, std::vector<double> pi,
                            std::vector<double> lambdas, Regime regime);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double q1() const noexcept { return q1_; }
  int m() const noexcept { return static_cast<int>(pi_.size()); }
  const std::vector<double>& pi() const noexcept { return pi_; }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  Regime regime() const noexcept { return regime_; }

  double sumInversePi() const;
  double sumLambdas() const;

 private:
  ExponentSet() = default;

  int n_ = 1;
  double alpha_ = 0.0;
  double s_ = 0.0;
  double p_ = 0.0;
  double q_ = 0.0;
  double q1_ = 0.0;
  std::vector<double> pi_;
  std::vector<double> lambdas_;
  Regime regime_ = Regime::SPrimeLeq;
};

/// Exponents of the single-operator Lebesgue bound: 1/q = 1/p - alpha/n.
class LebesgueExponents {
 public:
  static LebesgueExponents make(int n, double alpha, double s, double p, double q, Regime regime);
  static LebesgueExponents derive(int n, double alpha, double s, double p, Regime regime);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  Regime regime() const noexcept { return regime_; }

 private:
  LebesgueExponents() = default;

  int n_ = 1;
  double alpha_ = 0.0;
  double s_ = 0.0;
  double p_ = 0.0;
  double q_ = 0.0;
  Regime regime_ = Regime::SPrimeLeq;
};

}  // namespace fracmorrey

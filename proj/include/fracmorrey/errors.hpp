#pragma once

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fracmorrey {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical inputs was violated
/// (unsupported dimension, non-positive radius, broken exponent coupling...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its subdivision budget without meeting tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved, double requested)
      : Error(what + " (achieved error " + shortNumber(achieved) + ", requested " + shortNumber(requested) + ")"),
        achieved_(achieved),
        requested_(requested) {}

  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

  static std::string shortNumber(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
  }

 private:
  double achieved_;
  double requested_;
};

/// Suite configuration is malformed; `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, int line, const std::string& message)
      : Error(format(field, line, message)), field_(field), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + message;
  }

  std::string field_;
  int line_;
};

}  // namespace fracmorrey

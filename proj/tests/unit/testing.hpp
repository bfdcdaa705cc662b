#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace testing {

inline double relErr(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Seeded generator for the hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  /// log-uniform in [lo, hi]
  double logUniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing

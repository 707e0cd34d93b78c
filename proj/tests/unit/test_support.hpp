#pragma once

#include <array>
#include <cmath>
#include <random>

#include "spinorbit/measurement.hpp"
#include "spinorbit/mode.hpp"

namespace spinorbit::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261017);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline SpinOrbitMode random_mode() {
  std::normal_distribution<double> g;
  Amplitudes a;
  for (int k = 0; k < 4; ++k) a[k] = Complex(g(rng()), g(rng()));
  return SpinOrbitMode::normalized(a);
}

/// Random SU(2) matrix.
inline Eigen::Matrix2cd random_su2() {
  std::normal_distribution<double> g;
  Complex a(g(rng()), g(rng())), b(g(rng()), g(rng()));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  Eigen::Matrix2cd u;
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

/// Record with prescribed single-side expectations and correlator.
inline IntensityRecord record_from_moments(double a, double b, double ab, double alpha = 0.0,
                                           double beta = 0.0) {
  return {alpha,
          beta,
          (1.0 + a + b + ab) / 4.0,
          (1.0 + a - b - ab) / 4.0,
          (1.0 - a + b - ab) / 4.0,
          (1.0 - a - b + ab) / 4.0};
}

/// Table whose records are given per context in 11, 12, 21, 22 order.
inline ExperimentTable table_from_moments(const std::array<std::array<double, 3>, 4>& moments,
                                          const AngleSet& angles = AngleSet::preset()) {
  ExperimentTable t(angles);
  for (const Context& c : kContexts) {
    const auto& m = moments[c.slot()];
    t.set(c, record_from_moments(m[0], m[1], m[2], angles.alpha(c.i), angles.beta(c.j)));
  }
  return t;
}

}  // namespace spinorbit::testing

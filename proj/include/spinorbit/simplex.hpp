#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace spinorbit::lp {

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double cost_tol = 1e-12;
  std::size_t max_iterations = 20000;
  /// Consecutive degenerate pivots after which Bland's rule takes over.
  std::size_t degenerate_streak = 50;
};

enum class PhaseOneStatus { Optimal, IterationLimit };

struct PhaseOneResult {
  PhaseOneStatus status = PhaseOneStatus::Optimal;
  /// Minimum of sum |A x - b| over x >= 0 (sum of artificial variables).
  double objective = 0.0;
  /// Point attaining `objective`; satisfies A x = b exactly when objective is 0.
  Eigen::VectorXd x;
  std::size_t iterations = 0;
};

/// Phase one of the dense tableau simplex method for {A x = b, x >= 0}.
/// The problem is feasible iff the returned objective is zero.
PhaseOneResult phase_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const SimplexOptions& options = {});

}  // namespace spinorbit::lp

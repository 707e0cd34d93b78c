#pragma once

#include <array>

#include "spinorbit/measurement.hpp"

namespace spinorbit {

inline constexpr double kDefaultDecisionTol = 1e-9;

/// CHSH and Kujala-Dzhafarov summary of one experiment table.
struct InequalityReport {
  double s_chsh = 0.0;
  /// Odd-sign correlator sums; the minus sits on context 22, 21, 12, 11
  /// for entries 0..3.
  std::array<double, 4> s_kd{};
  double delta0 = 0.0;
  double kd_bound = 2.0;  ///< 2 (1 + delta0)
  double decision_tol = kDefaultDecisionTol;
  bool chsh_violated = false;
  bool contextual = false;
  double margin = 0.0;  ///< max(s_kd) - kd_bound

  double max_s_kd() const;
};

/// M11 + M12 - M21 + M22.
double chsh_S(const ExperimentTable& table);

/// Half the summed absolute differences of single-side expectations across
/// the two contexts in which each property is measured.
double delta0(const ExperimentTable& table);

/// The four |<AB> sums with one minus sign|, in report order.
std::array<double, 4> kd_sums(const CorrelationSet& correlations);

/// Contextual iff max S_KD exceeds 2(1 + delta0) by more than `decision_tol`.
InequalityReport kd_report(const ExperimentTable& table, double decision_tol = kDefaultDecisionTol);

}  // namespace spinorbit

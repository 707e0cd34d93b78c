#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "spinorbit/contextuality.hpp"
#include "spinorbit/measurement.hpp"

namespace spinorbit {

inline constexpr double kDefaultFeasibilityTol = 1e-7;

/// The eight context-indexed +-1 variables. Bit k of an atom index is the
/// value of variable k (0 -> +1, 1 -> -1).
enum class Variable : int { A11 = 0, A12, A21, A22, B11, B12, B21, B22 };

inline constexpr int kVariableCount = 8;
inline constexpr int kAtomCount = 1 << kVariableCount;

/// +1 or -1: value of `v` in atom `atom`.
inline int atom_value(int atom, Variable v) { return (atom >> static_cast<int>(v)) & 1 ? -1 : 1; }

/// A_ij and B_ij of one context.
inline Variable a_variable(Context c) { return static_cast<Variable>(c.slot()); }
inline Variable b_variable(Context c) { return static_cast<Variable>(4 + c.slot()); }

/// Pairs of variables measuring the same property in different contexts:
/// (A11, A12), (A21, A22), (B11, B21), (B12, B22).
inline constexpr std::array<std::array<Variable, 2>, 4> kConnections = {{
    {Variable::A11, Variable::A12},
    {Variable::A21, Variable::A22},
    {Variable::B11, Variable::B21},
    {Variable::B12, Variable::B22},
}};

/// Joint distribution of (A_ij, B_ij) in one context.
struct ContextJoint {
  Context context;
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;
};

/// Reads each record as an outcome distribution. Throws MalformedDataError
/// for a record that is not normalized.
std::array<ContextJoint, 4> context_joints(const ExperimentTable& table);

/// Smallest achievable P(X != X') for each connection, |P(X=+) - P(X'=+)|,
/// in kConnections order.
std::array<double, 4> connection_targets(const ExperimentTable& table);

/// Linear system over the 256 atom probabilities: three joint constraints
/// per context, total mass, and one mismatch equality per connection.
struct CouplingProblem {
  Eigen::MatrixXd constraints;
  Eigen::VectorXd rhs;
  double feasibility_tol = kDefaultFeasibilityTol;

  Eigen::Index rows() const { return constraints.rows(); }
};

CouplingProblem build_coupling_problem(const ExperimentTable& table,
                                       double feasibility_tol = kDefaultFeasibilityTol);

struct OracleVerdict {
  bool feasible = false;
  /// Atom probabilities of a multimaximal coupling; empty when infeasible.
  std::vector<double> witness;
  /// max |A x - b| at the returned point (the witness when feasible).
  double max_constraint_residual = 0.0;
  /// Minimal total constraint violation over nonnegative atom vectors.
  double phase_one_objective = 0.0;
};

/// Decides whether a multimaximal coupling exists. Feasible means
/// non-contextual. Throws SolverFailure when the solver stalls or a claimed
/// witness fails the residual check.
OracleVerdict multimaximal_feasible(const ExperimentTable& table,
                                    double feasibility_tol = kDefaultFeasibilityTol);

struct CrossValidation {
  InequalityReport inequalities;
  OracleVerdict oracle;
  /// contextual <=> infeasible
  bool agree = false;
};

CrossValidation cross_validate(const ExperimentTable& table,
                               double decision_tol = kDefaultDecisionTol,
                               double feasibility_tol = kDefaultFeasibilityTol);

}  // namespace spinorbit

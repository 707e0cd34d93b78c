#include "spinorbit/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "spinorbit/errors.hpp"
#include "spinorbit/simplex.hpp"

namespace spinorbit {

namespace {

// P(X = +) for each of the eight variables, read off the context joints.
std::array<double, kVariableCount> plus_probabilities(const std::array<ContextJoint, 4>& joints) {
  std::array<double, kVariableCount> p{};
  for (const ContextJoint& j : joints) {
    p[static_cast<int>(a_variable(j.context))] = j.p_pp + j.p_pm;
    p[static_cast<int>(b_variable(j.context))] = j.p_pp + j.p_mp;
  }
  return p;
}

}  // namespace

std::array<ContextJoint, 4> context_joints(const ExperimentTable& table) {
  std::array<ContextJoint, 4> out;
  for (const Context& c : kContexts) {
    const IntensityRecord& r = table.record(c);
    if (!is_normalized(r))
      throw MalformedDataError("record for context (alpha" + std::to_string(c.i) + ", beta" +
                               std::to_string(c.j) + ") is not a probability distribution");
    out[c.slot()] = {c, r.i_pp, r.i_pm, r.i_mp, r.i_mm};
  }
  return out;
}

std::array<double, 4> connection_targets(const ExperimentTable& table) {
  const auto p = plus_probabilities(context_joints(table));
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < kConnections.size(); ++k) {
    const auto [x, y] = kConnections[k];
    out[k] = std::abs(p[static_cast<int>(x)] - p[static_cast<int>(y)]);
  }
  return out;
}

CouplingProblem build_coupling_problem(const ExperimentTable& table, double feasibility_tol) {
  if (!(feasibility_tol > 0.0)) throw UsageError("feasibility tolerance must be positive");

  const auto joints = context_joints(table);
  const auto targets = connection_targets(table);

  constexpr int kRows = 4 * 3 + 1 + 4;
  CouplingProblem problem;
  problem.feasibility_tol = feasibility_tol;
  problem.constraints = Eigen::MatrixXd::Zero(kRows, kAtomCount);
  problem.rhs = Eigen::VectorXd::Zero(kRows);

  int row = 0;
  for (const ContextJoint& j : joints) {
    const Variable a = a_variable(j.context), b = b_variable(j.context);
    const std::array<std::pair<std::array<int, 2>, double>, 3> cells = {{
        {{+1, +1}, j.p_pp},
        {{+1, -1}, j.p_pm},
        {{-1, +1}, j.p_mp},
    }};
    for (const auto& [values, prob] : cells) {
      for (int atom = 0; atom < kAtomCount; ++atom)
        if (atom_value(atom, a) == values[0] && atom_value(atom, b) == values[1])
          problem.constraints(row, atom) = 1.0;
      problem.rhs[row++] = prob;
    }
  }

  problem.constraints.row(row).setOnes();
  problem.rhs[row++] = 1.0;

  for (std::size_t k = 0; k < kConnections.size(); ++k) {
    const auto [x, y] = kConnections[k];
    for (int atom = 0; atom < kAtomCount; ++atom)
      if (atom_value(atom, x) != atom_value(atom, y)) problem.constraints(row, atom) = 1.0;
    problem.rhs[row++] = targets[k];
  }
  return problem;
}

OracleVerdict multimaximal_feasible(const ExperimentTable& table, double feasibility_tol) {
  const CouplingProblem problem = build_coupling_problem(table, feasibility_tol);
  const lp::PhaseOneResult lp = lp::phase_one(problem.constraints, problem.rhs);

  OracleVerdict verdict;
  verdict.phase_one_objective = lp.objective;
  verdict.max_constraint_residual =
      (problem.constraints * lp.x - problem.rhs).cwiseAbs().maxCoeff();

  if (lp.status != lp::PhaseOneStatus::Optimal)
    throw SolverFailure("coupling feasibility solve hit the iteration limit",
                        verdict.max_constraint_residual, lp.objective);

  verdict.feasible = lp.objective <= feasibility_tol;
  if (verdict.feasible) {
    if (verdict.max_constraint_residual > feasibility_tol)
      throw SolverFailure("coupling witness fails the residual check",
                          verdict.max_constraint_residual, lp.objective);
    verdict.witness.assign(lp.x.data(), lp.x.data() + lp.x.size());
  }
  return verdict;
}

CrossValidation cross_validate(const ExperimentTable& table, double decision_tol,
                               double feasibility_tol) {
  CrossValidation out;
  out.inequalities = kd_report(table, decision_tol);
  out.oracle = multimaximal_feasible(table, feasibility_tol);
  out.agree = out.inequalities.contextual == !out.oracle.feasible;
  return out;
}

}  // namespace spinorbit

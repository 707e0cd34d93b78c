#include "spinorbit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinorbit::lp {

namespace {

// Tableau layout: rows [0, m) are constraints, row m is the reduced-cost row.
// Columns [0, n) are structural, [n, n + m) artificial, n + m is the rhs.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m_(a.rows()), n_(a.cols()), t_(Eigen::MatrixXd::Zero(m_ + 1, n_ + m_ + 1)), basis_(m_) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign * b[i];
      basis_[i] = n_ + i;
    }
    // Price out the artificial basis: d_j = -sum_i t_ij on structural columns.
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, rhs()) -= t_(i, rhs());
    }
  }

  Eigen::Index rhs() const { return n_ + m_; }
  double objective() const { return -t_(m_, rhs()); }

  Eigen::Index entering(bool bland, double cost_tol, const std::vector<bool>& blocked) const {
    Eigen::Index best = -1;
    double best_cost = -cost_tol;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (blocked[j]) continue;
      const double d = t_(m_, j);
      if (d < best_cost) {
        best = j;
        if (bland) break;
        best_cost = d;
      }
    }
    return best;
  }

  Eigen::Index leaving(Eigen::Index col, double pivot_tol) const {
    Eigen::Index best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double p = t_(i, col);
      if (p <= pivot_tol) continue;
      const double ratio = std::max(t_(i, rhs()), 0.0) / p;
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && best >= 0 && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  double rhs_value(Eigen::Index row) const { return t_(row, rhs()); }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = std::max(t_(i, rhs()), 0.0);
    return x;
  }

 private:
  Eigen::Index m_, n_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

PhaseOneResult phase_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const SimplexOptions& options) {
  if (a.rows() != b.size()) throw std::invalid_argument("phase_one: row count mismatch");

  Tableau tab(a, b);
  PhaseOneResult result;
  std::size_t streak = 0;
  std::vector<bool> blocked(static_cast<std::size_t>(a.cols()), false);

  while (true) {
    const bool bland = streak >= options.degenerate_streak;
    const Eigen::Index col = tab.entering(bland, options.cost_tol, blocked);
    if (col < 0) break;
    const Eigen::Index row = tab.leaving(col, options.pivot_tol);
    // Phase one is bounded below by zero, so a column without a usable pivot
    // only has a negative reduced cost through round-off. Skip it until the
    // basis changes.
    if (row < 0) {
      blocked[col] = true;
      continue;
    }
    std::fill(blocked.begin(), blocked.end(), false);
    if (++result.iterations > options.max_iterations) {
      result.status = PhaseOneStatus::IterationLimit;
      break;
    }
    const double before = tab.objective();
    tab.pivot(row, col);
    streak = (tab.objective() < before - 1e-15) ? 0 : streak + 1;
  }

  result.x = tab.solution();
  result.objective = std::max(tab.objective(), 0.0);
  return result;
}

}  // namespace spinorbit::lp

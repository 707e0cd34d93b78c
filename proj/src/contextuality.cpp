#include "spinorbit/contextuality.hpp"

#include <algorithm>
#include <cmath>

#include "spinorbit/errors.hpp"

namespace spinorbit {

double InequalityReport::max_s_kd() const { return *std::max_element(s_kd.begin(), s_kd.end()); }

double chsh_S(const ExperimentTable& table) {
  auto m = [&](int i, int j) { return correlation_M(table.record({i, j})); };
  return m(1, 1) + m(1, 2) - m(2, 1) + m(2, 2);
}

double delta0(const ExperimentTable& table) {
  auto e = [&](int i, int j) { return expectations(table.record({i, j})); };
  const Expectations e11 = e(1, 1), e12 = e(1, 2), e21 = e(2, 1), e22 = e(2, 2);
  return 0.5 * (std::abs(e11.a - e12.a) + std::abs(e21.a - e22.a) + std::abs(e11.b - e21.b) +
                std::abs(e12.b - e22.b));
}

std::array<double, 4> kd_sums(const CorrelationSet& c) {
  const double ab11 = c[0].e.ab, ab12 = c[1].e.ab, ab21 = c[2].e.ab, ab22 = c[3].e.ab;
  return {
      std::abs(ab11 + ab12 + ab21 - ab22),
      std::abs(ab11 + ab12 - ab21 + ab22),
      std::abs(ab11 - ab12 + ab21 + ab22),
      std::abs(-ab11 + ab12 + ab21 + ab22),
  };
}

InequalityReport kd_report(const ExperimentTable& table, double decision_tol) {
  if (!(decision_tol >= 0.0)) throw UsageError("decision tolerance must be nonnegative");

  InequalityReport r;
  r.decision_tol = decision_tol;
  r.s_chsh = chsh_S(table);
  r.s_kd = kd_sums(correlations(table));
  r.delta0 = delta0(table);
  r.kd_bound = 2.0 * (1.0 + r.delta0);
  r.margin = r.max_s_kd() - r.kd_bound;
  r.contextual = r.margin > decision_tol;
  r.chsh_violated = std::abs(r.s_chsh) > 2.0 + decision_tol;
  return r;
}

}  // namespace spinorbit

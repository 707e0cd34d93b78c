// Randomized invariants across the whole pipeline.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "spinorbit/contextuality.hpp"
#include "spinorbit/coupling.hpp"
#include "spinorbit/harness.hpp"
#include "test_support.hpp"

namespace spinorbit {
namespace {

using std::numbers::pi;

NoiseModel random_noise() {
  NoiseModel noise;
  noise.visibility_by_beta = {{0.0, testing::uniform(0.0, 1.0)}, {pi / 4.0, testing::uniform(0.0, 1.0)}};
  noise.dp_crosstalk = testing::uniform(0.0, 1.0);
  return noise;
}

TEST(Properties, RecordsAreProbabilitiesAndReportsAreConsistent) {
  for (int n = 0; n < 10000; ++n) {
    const ExperimentTable t = simulate_table(testing::random_mode(), AngleSet::preset(), random_noise());
    for (const Context& c : kContexts) {
      const IntensityRecord& r = t.record(c);
      for (double v : r.intensities()) ASSERT_GE(v, 0.0);
      ASSERT_NEAR(r.i_pp + r.i_pm + r.i_mp + r.i_mm, 1.0, 1e-9);
      const Expectations e = expectations(r);
      ASSERT_EQ(e.ab, correlation_M(r));
      ASSERT_LE(std::abs(e.a), 1.0 + 1e-12);
      ASSERT_LE(std::abs(e.b), 1.0 + 1e-12);
    }
    const InequalityReport r = kd_report(t);
    ASSERT_GE(r.delta0, 0.0);
    ASSERT_GE(r.kd_bound, 2.0);
    ASSERT_LE(std::abs(r.s_chsh), 4.0);
    ASSERT_EQ(r.contextual, r.max_s_kd() > r.kd_bound + r.decision_tol);
    const auto targets = connection_targets(t);
    ASSERT_NEAR(targets[0] + targets[1] + targets[2] + targets[3], r.delta0, 1e-12);
  }
}

TEST(Properties, VerdictStableUnderTinyPerturbations) {
  int checked = 0;
  for (int n = 0; n < 2000; ++n) {
    const ExperimentTable t = simulate_table(testing::random_mode(), AngleSet::preset(), random_noise());
    const InequalityReport base = kd_report(t);
    if (std::abs(base.margin) <= 1e-6) continue;
    ExperimentTable p(t.angles());
    for (const Context& c : kContexts) {
      IntensityRecord r = t.record(c);
      r.i_pp = std::max(0.0, r.i_pp + testing::uniform(-1e-12, 1e-12));
      r.i_pm = std::max(0.0, r.i_pm + testing::uniform(-1e-12, 1e-12));
      r.i_mp = std::max(0.0, r.i_mp + testing::uniform(-1e-12, 1e-12));
      r.i_mm = std::max(0.0, r.i_mm + testing::uniform(-1e-12, 1e-12));
      p.set(c, r);
    }
    ASSERT_EQ(kd_report(p).contextual, base.contextual);
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(Properties, EqualMarginalsReduceToChshCombinations) {
  for (int n = 0; n < 2000; ++n) {
    // Same marginals in every context, arbitrary admissible correlators.
    const double a = testing::uniform(-0.3, 0.3), b = testing::uniform(-0.3, 0.3);
    std::array<std::array<double, 3>, 4> moments{};
    for (auto& m : moments) m = {a, b, testing::uniform(-0.4, 0.4)};
    const ExperimentTable t = testing::table_from_moments(moments);
    const InequalityReport r = kd_report(t);
    ASSERT_NEAR(r.delta0, 0.0, 1e-15);
    const double m11 = moments[0][2], m12 = moments[1][2], m21 = moments[2][2], m22 = moments[3][2];
    ASSERT_NEAR(r.s_kd[0], std::abs(m11 + m12 + m21 - m22), 1e-12);
    ASSERT_NEAR(r.s_kd[1], std::abs(m11 + m12 - m21 + m22), 1e-12);
    ASSERT_NEAR(r.s_kd[2], std::abs(m11 - m12 + m21 + m22), 1e-12);
    ASSERT_NEAR(r.s_kd[3], std::abs(-m11 + m12 + m21 + m22), 1e-12);
  }
}

TEST(Properties, LocalUnitariesPreserveConcurrence) {
  for (int n = 0; n < 2000; ++n) {
    const SpinOrbitMode m = testing::random_mode();
    const Eigen::Matrix2cd u = testing::random_su2(), v = testing::random_su2();
    Eigen::Matrix4cd uv;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) uv(r, c) = u(r / 2, c / 2) * v(r % 2, c % 2);
    const SpinOrbitMode out = SpinOrbitMode::normalized(uv * m.amplitudes());
    ASSERT_NEAR(concurrence(out), concurrence(m), 1e-12);
    ASSERT_LE(concurrence(m), 1.0 + 1e-12);
  }
}

TEST(Properties, SimulatedSeriesAgreeWithOracleAwayFromBoundary) {
  RandomTableGenerator gen(99);
  int compared = 0;
  for (int n = 0; n < 300; ++n) {
    const RandomTable t = gen.next();
    const CrossValidation cv = cross_validate(t.table);
    if (std::abs(cv.inequalities.margin) <= 1e-6) continue;
    EXPECT_TRUE(cv.agree) << "margin " << cv.inequalities.margin << " objective "
                          << cv.oracle.phase_one_objective;
    ++compared;
  }
  EXPECT_GT(compared, 250);
}

}  // namespace
}  // namespace spinorbit

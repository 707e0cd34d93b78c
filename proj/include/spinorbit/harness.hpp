#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinorbit/config.hpp"
#include "spinorbit/contextuality.hpp"
#include "spinorbit/coupling.hpp"
#include "spinorbit/measurement.hpp"

namespace spinorbit {

/// Which of the two published table layouts a plain report leads with.
enum class ReportLayout { Chsh, KujalaDzhafarov };

struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::string tool_version;
  std::string timestamp;
};

struct ReportBundle {
  ExperimentTable table;
  CorrelationSet correlations{};
  InequalityReport inequalities;
  OracleVerdict oracle;
  bool agree = false;
  ReportLayout layout = ReportLayout::Chsh;
  int precision = 6;
  Provenance provenance;
};

std::string tool_version();

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// Runs both decision procedures on `table` and wraps the result.
ReportBundle analyze_table(const ExperimentTable& table, const RunConfig& config,
                           std::string command);

/// Simulates the configured mode through the bench and analyzes the table.
ReportBundle simulate(const RunConfig& config, std::string command = "simulate");

inline constexpr std::array<std::string_view, 4> kPresetNames = {
    "chsh-nonseparable", "chsh-separable", "kd-nonseparable", "kd-separable"};

/// Named experiment. The preset fixes the prepared mode and the layout;
/// angles, noise and tolerances come from `overrides`. Throws UsageError for
/// unknown names.
ReportBundle run_preset(std::string_view name, const RunConfig& overrides = {});

struct SweepPoint {
  double v_beta1 = 1.0;
  double v_beta2 = 1.0;
  double s_chsh = 0.0;
  std::array<double, 4> s_kd{};
  double delta0 = 0.0;
};

struct VisibilitySweepSpec {
  double v_min = 0.80;
  double v_max = 1.00;
  int steps = 21;
  /// S value the best-fit point should reproduce.
  double target_s = 2.503;
  /// Region searched for the best fit: [v1_lo, v1_hi] x [v2_lo, v2_hi].
  std::array<double, 2> fit_beta1 = {0.85, 0.95};
  std::array<double, 2> fit_beta2 = {0.80, 0.90};
};

struct VisibilitySweepResult {
  /// Row-major over (v_beta1, v_beta2), both ascending.
  std::vector<SweepPoint> points;
  int steps = 0;
  /// Grid point inside the fit region closest to target_s; ties go to the
  /// point nearest the region's center.
  std::optional<SweepPoint> best_fit;
};

/// Grid over the two interferometer visibilities with the config's mode,
/// angles and crosstalk.
VisibilitySweepResult visibility_sweep(const RunConfig& config, const VisibilitySweepSpec& spec);

struct AngleSweepPoint {
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double s_chsh = 0.0;
  std::array<double, 4> s_kd{};
  double delta0 = 0.0;
};

/// Grid over (alpha2, beta2) in [0, pi) with alpha1, beta1 from the config.
std::vector<AngleSweepPoint> angle_sweep(const RunConfig& config, int steps);

struct RandomTableSpec {
  double v_min = 0.5;
  double v_max = 1.0;
  double crosstalk_max = 0.2;
};

/// Table drawn from a Haar-random mode, uniform angles in [0, pi), uniform
/// visibilities and crosstalk.
struct RandomTable {
  SpinOrbitMode mode;
  AngleSet angles;
  NoiseModel noise;
  ExperimentTable table;
};

class RandomTableGenerator {
 public:
  explicit RandomTableGenerator(std::uint64_t seed, RandomTableSpec spec = {})
      : rng_(seed), spec_(spec) {}

  SpinOrbitMode random_mode();
  RandomTable next();

 private:
  std::mt19937_64 rng_;
  RandomTableSpec spec_;
};

struct RandomSweepRow {
  std::size_t index = 0;
  InequalityReport inequalities;
  bool feasible = false;
  bool agree = false;
};

std::vector<RandomSweepRow> random_sweep(std::size_t count, std::uint64_t seed,
                                         double decision_tol, double feasibility_tol,
                                         RandomTableSpec spec = {});

}  // namespace spinorbit

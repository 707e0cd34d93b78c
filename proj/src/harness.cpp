#include "spinorbit/harness.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>

#include "spinorbit/errors.hpp"

#ifndef SPINORBIT_VERSION
#define SPINORBIT_VERSION "0.0.0"
#endif

namespace spinorbit {

namespace {

struct PresetDef {
  std::string_view name;
  std::string_view mode;
  ReportLayout layout;
};

constexpr std::array<PresetDef, 4> kPresets = {{
    {"chsh-nonseparable", "nonseparable", ReportLayout::Chsh},
    {"chsh-separable", "separable", ReportLayout::Chsh},
    {"kd-nonseparable", "nonseparable", ReportLayout::KujalaDzhafarov},
    {"kd-separable", "separable", ReportLayout::KujalaDzhafarov},
}};

SweepPoint evaluate(const SpinOrbitMode& mode, const AngleSet& angles, const NoiseModel& noise) {
  const ExperimentTable table = simulate_table(mode, angles, noise);
  const InequalityReport r = kd_report(table);
  SweepPoint p;
  p.s_chsh = r.s_chsh;
  p.s_kd = r.s_kd;
  p.delta0 = r.delta0;
  return p;
}

}  // namespace

std::string tool_version() { return SPINORBIT_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportBundle analyze_table(const ExperimentTable& table, const RunConfig& config,
                           std::string command) {
  ReportBundle b;
  b.table = table;
  b.correlations = correlations(table);
  const CrossValidation cv = cross_validate(table, config.decision_tol, config.feasibility_tol);
  b.inequalities = cv.inequalities;
  b.oracle = cv.oracle;
  b.agree = cv.agree;
  b.precision = config.precision;
  b.provenance = {std::move(command), config.echo(), tool_version(), utc_timestamp()};
  return b;
}

ReportBundle simulate(const RunConfig& config, std::string command) {
  config.validate();
  return analyze_table(simulate_table(config.mode(), config.angles, config.noise()), config,
                       std::move(command));
}

ReportBundle run_preset(std::string_view name, const RunConfig& overrides) {
  for (const PresetDef& p : kPresets) {
    if (p.name != name) continue;
    RunConfig config = overrides;
    config.mode_name = std::string(p.mode);
    config.amplitudes.reset();
    ReportBundle b = simulate(config, "preset " + std::string(name));
    b.layout = p.layout;
    return b;
  }
  std::string known;
  for (std::string_view n : kPresetNames) known += (known.empty() ? "" : ", ") + std::string(n);
  throw UsageError("unknown preset '" + std::string(name) + "'; expected one of " + known);
}

VisibilitySweepResult visibility_sweep(const RunConfig& config, const VisibilitySweepSpec& spec) {
  config.validate();
  if (spec.steps < 2) throw UsageError("sweep needs at least two steps");
  if (!(spec.v_min >= 0.0 && spec.v_max <= 1.0 && spec.v_min <= spec.v_max))
    throw UsageError("sweep visibilities must satisfy 0 <= vmin <= vmax <= 1");

  const SpinOrbitMode mode = config.mode();
  VisibilitySweepResult out;
  out.steps = spec.steps;
  out.points.reserve(static_cast<std::size_t>(spec.steps * spec.steps));

  const double step = (spec.v_max - spec.v_min) / (spec.steps - 1);
  const double c1 = 0.5 * (spec.fit_beta1[0] + spec.fit_beta1[1]);
  const double c2 = 0.5 * (spec.fit_beta2[0] + spec.fit_beta2[1]);
  double best_err = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  constexpr double kGridSlack = 1e-9;

  for (int a = 0; a < spec.steps; ++a) {
    for (int c = 0; c < spec.steps; ++c) {
      RunConfig point_config = config;
      point_config.visibility_beta1 = spec.v_min + a * step;
      point_config.visibility_beta2 = spec.v_min + c * step;
      SweepPoint p = evaluate(mode, config.angles, point_config.noise());
      p.v_beta1 = point_config.visibility_beta1;
      p.v_beta2 = point_config.visibility_beta2;
      out.points.push_back(p);

      const bool in_box = p.v_beta1 >= spec.fit_beta1[0] - kGridSlack &&
                          p.v_beta1 <= spec.fit_beta1[1] + kGridSlack &&
                          p.v_beta2 >= spec.fit_beta2[0] - kGridSlack &&
                          p.v_beta2 <= spec.fit_beta2[1] + kGridSlack;
      if (!in_box) continue;
      const double err = std::abs(p.s_chsh - spec.target_s);
      const double dist = std::hypot(p.v_beta1 - c1, p.v_beta2 - c2);
      if (err < best_err - 1e-12 || (std::abs(err - best_err) <= 1e-12 && dist < best_dist)) {
        best_err = err;
        best_dist = dist;
        out.best_fit = p;
      }
    }
  }
  return out;
}

std::vector<AngleSweepPoint> angle_sweep(const RunConfig& config, int steps) {
  config.validate();
  if (steps < 1) throw UsageError("sweep needs at least one step");
  const SpinOrbitMode mode = config.mode();
  std::vector<AngleSweepPoint> out;
  for (int a = 0; a < steps; ++a) {
    for (int c = 0; c < steps; ++c) {
      RunConfig point_config = config;
      point_config.angles.alpha2 = std::numbers::pi * a / steps;
      point_config.angles.beta2 = std::numbers::pi * c / steps;
      const SweepPoint p = evaluate(mode, point_config.angles, point_config.noise());
      out.push_back({point_config.angles.alpha2, point_config.angles.beta2, p.s_chsh, p.s_kd, p.delta0});
    }
  }
  return out;
}

SpinOrbitMode RandomTableGenerator::random_mode() {
  std::normal_distribution<double> gauss;
  Amplitudes raw;
  for (int k = 0; k < 4; ++k) raw[k] = Complex(gauss(rng_), gauss(rng_));
  return SpinOrbitMode::normalized(raw);
}

RandomTable RandomTableGenerator::next() {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> vis(spec_.v_min, spec_.v_max);
  std::uniform_real_distribution<double> eps(0.0, spec_.crosstalk_max);

  SpinOrbitMode mode = random_mode();
  AngleSet angles{angle(rng_), angle(rng_), angle(rng_), angle(rng_)};
  NoiseModel noise;
  noise.visibility_by_beta = {{angles.beta1, vis(rng_)}, {angles.beta2, vis(rng_)}};
  noise.dp_crosstalk = eps(rng_);
  ExperimentTable table = simulate_table(mode, angles, noise);
  return {mode, angles, noise, std::move(table)};
}

std::vector<RandomSweepRow> random_sweep(std::size_t count, std::uint64_t seed,
                                         double decision_tol, double feasibility_tol,
                                         RandomTableSpec spec) {
  RandomTableGenerator gen(seed, spec);
  std::vector<RandomSweepRow> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const RandomTable t = gen.next();
    const CrossValidation cv = cross_validate(t.table, decision_tol, feasibility_tol);
    out.push_back({n, cv.inequalities, cv.oracle.feasible, cv.agree});
  }
  return out;
}

}  // namespace spinorbit

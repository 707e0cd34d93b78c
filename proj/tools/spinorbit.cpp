// Command-line front end: simulate, analyze, oracle, preset, sweep.
//
// Exit codes: 0 analysis ran (whatever the verdict), 2 usage error,
// 3 data error, 4 solver failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinorbit/config.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/harness.hpp"
#include "spinorbit/ingest.hpp"
#include "spinorbit/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSolver = 4;

// Flags shared by every subcommand; applied after the config file.
struct CommonFlags {
  std::optional<std::string> config_file;
  std::optional<std::string> angles;
  bool degrees = false;
  std::optional<std::string> visibility;
  std::optional<std::string> crosstalk;
  std::optional<std::string> format;
  std::optional<std::string> tol_decision;
  std::optional<std::string> tol_feasibility;
  std::optional<std::string> seed;
  std::optional<std::string> precision;
  std::optional<std::string> output;
  std::optional<std::string> mode;
  std::optional<std::string> amplitudes;

  void attach_mode(CLI::App* app) {
    app->add_option("--mode", mode,
                    "nonseparable, separable, PsiPlus, PsiMinus, PhiPlus, PhiMinus, Hh, Hv, Vh, Vv");
    app->add_option("--amplitudes", amplitudes, "a_hh,a_hv,a_vh,a_vv; each re or re:im");
  }

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "Key-value config file (flags override it)");
    app->add_option("--angles", angles, "Analyzer angles a1,a2,b1,b2 (radians)");
    app->add_flag("--degrees", degrees, "Read --angles in degrees");
    app->add_option("--visibility", visibility, "Interferometer visibility b1=V1,b2=V2");
    app->add_option("--crosstalk", crosstalk, "Dove prism polarization crosstalk in [0,1]");
    app->add_option("--format", format, "plain, csv or json");
    app->add_option("--tol-decision", tol_decision, "Inequality decision tolerance");
    app->add_option("--tol-feasibility", tol_feasibility, "Coupling feasibility tolerance");
    app->add_option("--seed", seed, "Seed for randomized sweeps");
    app->add_option("--precision", precision, "Significant digits in plain output");
    app->add_option("-o,--output", output, "Write to file instead of stdout");
  }

  spinorbit::RunConfig resolve(spinorbit::RunConfig config) const {
    if (config_file) spinorbit::load_config_file(config, *config_file);
    if (mode) spinorbit::apply_setting(config, "mode", *mode);
    if (amplitudes) spinorbit::apply_setting(config, "amplitudes", *amplitudes);
    if (angles) spinorbit::apply_setting(config, degrees ? "angles_deg" : "angles", *angles);
    if (visibility) spinorbit::apply_setting(config, "visibility", *visibility);
    if (crosstalk) spinorbit::apply_setting(config, "crosstalk", *crosstalk);
    if (format) spinorbit::apply_setting(config, "format", *format);
    if (tol_decision) spinorbit::apply_setting(config, "tol_decision", *tol_decision);
    if (tol_feasibility) spinorbit::apply_setting(config, "tol_feasibility", *tol_feasibility);
    if (seed) spinorbit::apply_setting(config, "seed", *seed);
    if (precision) spinorbit::apply_setting(config, "precision", *precision);
    config.validate();
    return config;
  }
};

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw spinorbit::UsageError("cannot write '" + *path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace spinorbit;

  CLI::App app{"Spin-orbit mode CHSH / Kujala-Dzhafarov simulator and analyzer"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  CommonFlags flags;

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a mode through the bench and report");
  flags.attach_mode(simulate_cmd);
  flags.attach(simulate_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a measured intensity table (CSV or JSON)");
  std::string analyze_path;
  analyze_cmd->add_option("file", analyze_path, "Intensity table")->required();
  flags.attach(analyze_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Multimaximal-coupling feasibility for a table");
  std::string oracle_path;
  oracle_cmd->add_option("file", oracle_path, "Intensity table")->required();
  flags.attach(oracle_cmd);

  auto* preset_cmd = app.add_subcommand("preset", "Run a named experiment");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name,
                         "chsh-nonseparable, chsh-separable, kd-nonseparable, kd-separable")
      ->required();
  flags.attach(preset_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps as CSV");
  std::string sweep_kind = "visibility";
  VisibilitySweepSpec vis_spec;
  int angle_steps = 16;
  std::size_t random_count = 1000;
  sweep_cmd->add_option("--kind", sweep_kind, "visibility, angle or random")
      ->check(CLI::IsMember({"visibility", "angle", "random"}));
  flags.attach_mode(sweep_cmd);
  sweep_cmd->add_option("--vmin", vis_spec.v_min, "Lowest visibility");
  sweep_cmd->add_option("--vmax", vis_spec.v_max, "Highest visibility");
  sweep_cmd->add_option("--steps", vis_spec.steps, "Grid points per visibility axis");
  sweep_cmd->add_option("--target", vis_spec.target_s, "S value for the best-fit search");
  sweep_cmd->add_option("--angle-steps", angle_steps, "Grid points per angle axis");
  sweep_cmd->add_option("--count", random_count, "Number of random tables");
  flags.attach(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig config = flags.resolve(RunConfig{});

    if (simulate_cmd->parsed()) {
      write_output(flags.output, emit_report(simulate(config), config.format));
    } else if (analyze_cmd->parsed()) {
      const ExperimentTable table = ingest_file(analyze_path);
      write_output(flags.output,
                   emit_report(analyze_table(table, config, "analyze " + analyze_path), config.format));
    } else if (oracle_cmd->parsed()) {
      const ExperimentTable table = ingest_file(oracle_path);
      write_output(flags.output, emit_oracle_report(analyze_table(table, config, "oracle " + oracle_path),
                                                    config.format));
    } else if (preset_cmd->parsed()) {
      write_output(flags.output, emit_report(run_preset(preset_name, config), config.format));
    } else if (sweep_cmd->parsed()) {
      if (sweep_kind == "visibility") {
        const VisibilitySweepResult result = visibility_sweep(config, vis_spec);
        write_output(flags.output, emit_visibility_sweep_csv(result));
        if (result.best_fit)
          std::cerr << "best fit: v_beta1=" << format_double(result.best_fit->v_beta1)
                    << " v_beta2=" << format_double(result.best_fit->v_beta2)
                    << " S=" << format_double(result.best_fit->s_chsh) << "\n";
      } else if (sweep_kind == "angle") {
        write_output(flags.output, emit_angle_sweep_csv(angle_sweep(config, angle_steps)));
      } else {
        write_output(flags.output, emit_random_sweep_csv(random_sweep(
                                       random_count, config.seed, config.decision_tol,
                                       config.feasibility_tol)));
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

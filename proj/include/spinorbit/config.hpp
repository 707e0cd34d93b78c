#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinorbit/bench.hpp"
#include "spinorbit/coupling.hpp"
#include "spinorbit/measurement.hpp"
#include "spinorbit/mode.hpp"

namespace spinorbit {

enum class OutputFormat { Plain, Csv, Json };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

/// Everything a run needs. Populated from defaults, then a key-value file,
/// then command-line flags.
struct RunConfig {
  /// Bell label (PsiPlus, psi-, ...), basis mode (Hh, Hv, Vh, Vv),
  /// "nonseparable" (S-plate output) or "separable" (S-plate + PBS1).
  std::string mode_name = "nonseparable";
  /// When set, overrides `mode_name`.
  std::optional<std::array<Complex, 4>> amplitudes;
  AngleSet angles = AngleSet::preset();
  double visibility_beta1 = 1.0;
  double visibility_beta2 = 1.0;
  double crosstalk = 0.0;
  double decision_tol = kDefaultDecisionTol;
  double feasibility_tol = kDefaultFeasibilityTol;
  OutputFormat format = OutputFormat::Plain;
  int precision = 6;
  std::uint64_t seed = 1;

  /// Visibility keyed by this config's beta1/beta2 settings.
  NoiseModel noise() const;

  /// Resolves the mode description. Throws UsageError for unknown names.
  SpinOrbitMode mode() const;

  /// Throws UsageError on out-of-range values.
  void validate() const;

  /// Canonical key=value echo for report provenance.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Resolves a mode name as accepted by RunConfig::mode_name.
SpinOrbitMode mode_from_name(std::string_view name);

/// Applies one setting. Keys use underscores (tol_decision); dashes are
/// accepted too. `angles` takes radians, `angles_deg` degrees. Throws
/// UsageError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` file; `#` starts a comment. Throws UsageError naming
/// the line on failure.
void load_config_text(RunConfig& config, std::string_view text);
void load_config_file(RunConfig& config, const std::string& path);

/// Shortest round-trip decimal for a double.
std::string format_double(double value);

}  // namespace spinorbit

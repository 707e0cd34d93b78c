#pragma once

#include <string>
#include <vector>

#include "spinorbit/config.hpp"
#include "spinorbit/harness.hpp"

namespace spinorbit {

/// Serializes a bundle. Output is a pure function of the bundle; the only
/// run-dependent field is the provenance timestamp.
///
/// - plain: human-readable, published-table layout, `precision` significant
///   digits.
/// - csv: the intensity table under the ingestion header at full precision,
///   summary values as `# key=value` comment lines (ignored on ingestion).
/// - json: full report; the "table" array is accepted by ingestion.
std::string emit_report(const ReportBundle& bundle, OutputFormat format);

/// Feasibility verdict only, for the `oracle` subcommand.
std::string emit_oracle_report(const ReportBundle& bundle, OutputFormat format);

std::string emit_visibility_sweep_csv(const VisibilitySweepResult& sweep);
std::string emit_angle_sweep_csv(const std::vector<AngleSweepPoint>& sweep);
std::string emit_random_sweep_csv(const std::vector<RandomSweepRow>& rows);

}  // namespace spinorbit

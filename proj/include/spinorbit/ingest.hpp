#pragma once

#include <string>
#include <string_view>

#include "spinorbit/measurement.hpp"

namespace spinorbit {

/// Required first non-comment line of an intensity file.
inline constexpr std::string_view kCsvHeader = "alpha_rad,beta_rad,i_pp,i_pm,i_mp,i_mm";

/// Parses intensity rows (raw, normalized on ingestion) into a complete
/// table. Blank lines and lines starting with '#' are skipped. Errors carry
/// the 1-based line number and column name.
ExperimentTable parse_csv(std::string_view text);
ExperimentTable ingest_csv(const std::string& path);

/// Reads the "table" array of a JSON report.
ExperimentTable parse_json_table(std::string_view text);

/// Dispatches on content: JSON when the first non-blank character is '{'.
ExperimentTable ingest_file(const std::string& path);

}  // namespace spinorbit

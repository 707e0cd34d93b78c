#include "spinorbit/ingest.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

constexpr std::array<const char*, 6> kColumns = {"alpha_rad", "beta_rad", "i_pp", "i_pm", "i_mp", "i_mm"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedDataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_field(std::string_view text, std::size_t row, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw MalformedDataError("invalid number '" + std::string(text) + "'", row, column);
  return value;
}

IntensityRecord make_record(const std::array<double, 6>& v, std::size_t row) {
  const std::array<double, 4> raw = {v[2], v[3], v[4], v[5]};
  try {
    return normalize_record(raw, v[0], v[1]);
  } catch (const MalformedDataError& e) {
    throw MalformedDataError(e.detail(), row, e.column());
  } catch (const DegenerateRecordError&) {
    throw DegenerateRecordError("row " + std::to_string(row) + ": record has zero total intensity");
  }
}

}  // namespace

ExperimentTable parse_csv(std::string_view text) {
  std::vector<IntensityRecord> records;
  std::vector<std::size_t> rows;
  bool header_seen = false;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    if (!header_seen) {
      if (line != kCsvHeader)
        throw MalformedDataError("header must be '" + std::string(kCsvHeader) + "'", line_no, "header");
      header_seen = true;
      continue;
    }

    std::array<double, 6> values{};
    std::size_t field = 0, pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      if (field >= kColumns.size())
        throw MalformedDataError("too many fields", line_no, kColumns.back());
      values[field] = parse_field(line.substr(pos, comma - pos), line_no, kColumns[field]);
      ++field;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (field != kColumns.size())
      throw MalformedDataError("too few fields", line_no, kColumns[field]);

    records.push_back(make_record(values, line_no));
    rows.push_back(line_no);
  }

  if (!header_seen) throw MalformedDataError("missing header", std::nullopt, "header");
  return assemble_table(records, rows);
}

ExperimentTable ingest_csv(const std::string& path) { return parse_csv(read_file(path)); }

ExperimentTable parse_json_table(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDataError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("table") || !doc["table"].is_array())
    throw MalformedDataError("JSON report has no 'table' array");

  std::vector<IntensityRecord> records;
  std::size_t row = 0;
  for (const auto& entry : doc["table"]) {
    ++row;
    std::array<double, 6> values{};
    for (std::size_t k = 0; k < kColumns.size(); ++k) {
      if (!entry.contains(kColumns[k]) || !entry[kColumns[k]].is_number())
        throw MalformedDataError("missing or non-numeric field", row, kColumns[k]);
      values[k] = entry[kColumns[k]].get<double>();
    }
    records.push_back(make_record(values, row));
  }
  return assemble_table(records);
}

ExperimentTable ingest_file(const std::string& path) {
  const std::string text = read_file(path);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_table(text);
    break;
  }
  return parse_csv(text);
}

}  // namespace spinorbit

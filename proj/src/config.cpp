#include "spinorbit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value))
    throw UsageError("invalid number '" + std::string(text) + "' for " + std::string(what));
  return value;
}

// "re" or "re:im"
Complex parse_complex(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0], "amplitude"), 0.0};
  if (parts.size() == 2) return {parse_real(parts[0], "amplitude"), parse_real(parts[1], "amplitude")};
  throw UsageError("invalid amplitude '" + std::string(text) + "'; expected re or re:im");
}

AngleSet parse_angles(std::string_view text, double scale) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw UsageError("angles expects a1,a2,b1,b2");
  return {scale * parse_real(parts[0], "angles"), scale * parse_real(parts[1], "angles"),
          scale * parse_real(parts[2], "angles"), scale * parse_real(parts[3], "angles")};
}

// "b1=V1,b2=V2" or a single value for both settings.
void parse_visibility(RunConfig& config, std::string_view text) {
  if (text.find('=') == std::string_view::npos) {
    config.visibility_beta1 = config.visibility_beta2 = parse_real(text, "visibility");
    return;
  }
  for (std::string_view item : split(text, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw UsageError("visibility expects b1=V1,b2=V2");
    const std::string key = lower(trim(item.substr(0, eq)));
    const double v = parse_real(item.substr(eq + 1), "visibility");
    if (key == "b1")
      config.visibility_beta1 = v;
    else if (key == "b2")
      config.visibility_beta2 = v;
    else
      throw UsageError("visibility key must be b1 or b2, got '" + key + "'");
  }
}

std::uint64_t parse_seed(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw UsageError("invalid seed '" + std::string(text) + "'");
  return value;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  const std::string f = lower(trim(text));
  if (f == "plain" || f == "plain-table" || f == "table") return OutputFormat::Plain;
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw UsageError("unknown format '" + std::string(text) + "'; expected plain, csv or json");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Plain: return "plain";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
  }
  return "?";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

SpinOrbitMode mode_from_name(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "nonseparable" || n == "non-separable" || n == "splate") return s_plate(Polarization::V);
  if (n == "separable") return pbs_filter(s_plate(Polarization::V), PbsPort::TransmitH);
  if (n == "psiplus" || n == "psi+") return bell_mode(BellLabel::PsiPlus);
  if (n == "psiminus" || n == "psi-") return bell_mode(BellLabel::PsiMinus);
  if (n == "phiplus" || n == "phi+") return bell_mode(BellLabel::PhiPlus);
  if (n == "phiminus" || n == "phi-") return bell_mode(BellLabel::PhiMinus);
  if (n == "hh") return basis_mode(Basis::Hh);
  if (n == "hv") return basis_mode(Basis::Hv);
  if (n == "vh") return basis_mode(Basis::Vh);
  if (n == "vv") return basis_mode(Basis::Vv);
  throw UsageError("unknown mode '" + std::string(name) + "'");
}

NoiseModel RunConfig::noise() const {
  NoiseModel n;
  n.visibility_by_beta = {{angles.beta1, visibility_beta1}, {angles.beta2, visibility_beta2}};
  n.dp_crosstalk = crosstalk;
  return n;
}

SpinOrbitMode RunConfig::mode() const {
  if (amplitudes) {
    const auto& a = *amplitudes;
    try {
      return make_mode(a[0], a[1], a[2], a[3]);
    } catch (const ZeroModeError&) {
      throw UsageError("amplitudes must not all be zero");
    }
  }
  return mode_from_name(mode_name);
}

void RunConfig::validate() const {
  angles.validate();
  noise().validate();
  if (!(decision_tol > 0.0) || !std::isfinite(decision_tol))
    throw UsageError("decision tolerance must be positive");
  if (!(feasibility_tol > 0.0) || !std::isfinite(feasibility_tol))
    throw UsageError("feasibility tolerance must be positive");
  if (precision < 1 || precision > 17) throw UsageError("precision must be between 1 and 17");
  (void)mode();
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  if (amplitudes) {
    std::string a;
    for (std::size_t k = 0; k < 4; ++k) {
      if (k) a += ",";
      a += format_double((*amplitudes)[k].real()) + ":" + format_double((*amplitudes)[k].imag());
    }
    out.emplace_back("amplitudes", a);
  } else {
    out.emplace_back("mode", mode_name);
  }
  out.emplace_back("angles", format_double(angles.alpha1) + "," + format_double(angles.alpha2) + "," +
                                 format_double(angles.beta1) + "," + format_double(angles.beta2));
  out.emplace_back("visibility",
                   "b1=" + format_double(visibility_beta1) + ",b2=" + format_double(visibility_beta2));
  out.emplace_back("crosstalk", format_double(crosstalk));
  out.emplace_back("tol_decision", format_double(decision_tol));
  out.emplace_back("tol_feasibility", format_double(feasibility_tol));
  out.emplace_back("format", std::string(to_string(format)));
  out.emplace_back("precision", std::to_string(precision));
  out.emplace_back("seed", std::to_string(seed));
  return out;
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view value) {
  std::string key = lower(trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  value = trim(value);

  if (key == "mode") {
    (void)mode_from_name(value);
    config.mode_name = std::string(value);
    config.amplitudes.reset();
  } else if (key == "amplitudes") {
    const auto parts = split(value, ',');
    if (parts.size() != 4) throw UsageError("amplitudes expects a_hh,a_hv,a_vh,a_vv");
    std::array<Complex, 4> a;
    for (std::size_t k = 0; k < 4; ++k) a[k] = parse_complex(parts[k]);
    config.amplitudes = a;
  } else if (key == "angles") {
    config.angles = parse_angles(value, 1.0);
  } else if (key == "angles_deg") {
    config.angles = parse_angles(value, std::numbers::pi / 180.0);
  } else if (key == "visibility") {
    parse_visibility(config, value);
  } else if (key == "crosstalk") {
    config.crosstalk = parse_real(value, "crosstalk");
  } else if (key == "tol_decision" || key == "decision_tol") {
    config.decision_tol = parse_real(value, "tol_decision");
  } else if (key == "tol_feasibility" || key == "feasibility_tol") {
    config.feasibility_tol = parse_real(value, "tol_feasibility");
  } else if (key == "format" || key == "output_format") {
    config.format = parse_format(value);
  } else if (key == "precision") {
    config.precision = static_cast<int>(parse_real(value, "precision"));
  } else if (key == "seed") {
    config.seed = parse_seed(value);
  } else {
    throw UsageError("unknown configuration key '" + std::string(raw_key) + "'");
  }
}

void load_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_config_text(config, buf.str());
}

}  // namespace spinorbit

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <regex>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "spinorbit/config.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/harness.hpp"
#include "spinorbit/ingest.hpp"
#include "spinorbit/report.hpp"

namespace spinorbit {
namespace {

using std::numbers::pi;

std::string strip_timestamp(const std::string& text) {
  return std::regex_replace(text, std::regex("\\d{4}-\\d\\d-\\d\\dT\\d\\d:\\d\\d:\\d\\dZ"), "<time>");
}

std::string preset_csv_body() {
  return std::string(kCsvHeader) +
         "\n0.39269908169872414,0,0.4267766952966369,0.07322330470336312,0.07322330470336312,0.4267766952966369"
         "\n0.39269908169872414,0.7853981633974483,0.4267766952966369,0.0732233047033631,0.0732233047033631,0.4267766952966369"
         "\n1.1780972450961724,0,0.0732233047033631,0.4267766952966369,0.4267766952966369,0.0732233047033631"
         "\n1.1780972450961724,0.7853981633974483,0.4267766952966369,0.0732233047033631,0.0732233047033631,0.4267766952966369\n";
}

// ---- config ----

TEST(Config, DefaultsValidate) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.format, OutputFormat::Plain);
  EXPECT_EQ(c.precision, 6);
  EXPECT_NEAR(overlap(c.mode(), bell_mode(BellLabel::PsiMinus)), 1.0, 1e-12);
}

TEST(Config, ModeNames) {
  EXPECT_NEAR(overlap(mode_from_name("separable"), basis_mode(Basis::Hh)), 1.0, 1e-12);
  EXPECT_NEAR(overlap(mode_from_name("PhiPlus"), bell_mode(BellLabel::PhiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(overlap(mode_from_name("psi+"), bell_mode(BellLabel::PsiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(overlap(mode_from_name("Vh"), basis_mode(Basis::Vh)), 1.0, 1e-12);
  EXPECT_THROW(mode_from_name("bogus"), UsageError);
}

TEST(Config, ApplySettings) {
  RunConfig c;
  apply_setting(c, "angles", "0.1,0.2,0.3,0.4");
  EXPECT_DOUBLE_EQ(c.angles.beta2, 0.4);
  apply_setting(c, "angles_deg", "22.5,67.5,0,45");
  EXPECT_NEAR(c.angles.alpha1, pi / 8.0, 1e-15);
  EXPECT_NEAR(c.angles.beta2, pi / 4.0, 1e-15);
  apply_setting(c, "visibility", "b1=0.9,b2=0.85");
  EXPECT_DOUBLE_EQ(c.visibility_beta1, 0.9);
  EXPECT_DOUBLE_EQ(c.visibility_beta2, 0.85);
  EXPECT_DOUBLE_EQ(c.noise().visibility(pi / 4.0), 0.85);
  apply_setting(c, "crosstalk", "0.05");
  EXPECT_DOUBLE_EQ(c.noise().dp_crosstalk, 0.05);
  apply_setting(c, "tol-decision", "1e-6");
  EXPECT_DOUBLE_EQ(c.decision_tol, 1e-6);
  apply_setting(c, "format", "json");
  EXPECT_EQ(c.format, OutputFormat::Json);
  apply_setting(c, "amplitudes", "1,0,0:0.5,-1");
  ASSERT_TRUE(c.amplitudes.has_value());
  EXPECT_EQ((*c.amplitudes)[2], Complex(0.0, 0.5));
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, BadValues) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "angles", "0.1,0.2"), UsageError);
  EXPECT_THROW(apply_setting(c, "visibility", "b3=0.9"), UsageError);
  EXPECT_THROW(apply_setting(c, "format", "xml"), UsageError);
  EXPECT_THROW(apply_setting(c, "nonsense", "1"), UsageError);
  EXPECT_THROW(apply_setting(c, "crosstalk", "abc"), UsageError);
  apply_setting(c, "crosstalk", "1.5");
  EXPECT_THROW(c.validate(), UsageError);
  RunConfig d;
  apply_setting(d, "tol_feasibility", "0");
  EXPECT_THROW(d.validate(), UsageError);
  RunConfig z;
  apply_setting(z, "amplitudes", "0,0,0,0");
  EXPECT_THROW(z.validate(), UsageError);
}

TEST(Config, LoadText) {
  RunConfig c;
  load_config_text(c, "# bench\nmode = separable\n\nvisibility = b1=0.9, b2=0.8\nprecision = 4\n");
  EXPECT_EQ(c.mode_name, "separable");
  EXPECT_DOUBLE_EQ(c.visibility_beta2, 0.8);
  EXPECT_EQ(c.precision, 4);
  try {
    load_config_text(c, "mode = separable\nthis line is wrong\n");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(load_config_file(c, "/nonexistent/config.ini"), UsageError);
}

TEST(Config, FormatDoubleRoundTrips) {
  for (double v : {0.1, pi, -1e-300, 2.503, 1.0 / 3.0}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(2.0), "2");
}

// ---- ingestion ----

TEST(ParseCsv, ReadsPresetTable) {
  const ExperimentTable t = parse_csv(preset_csv_body());
  ASSERT_TRUE(t.complete());
  EXPECT_NEAR(chsh_S(t), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(t.angles().alpha2, 3.0 * pi / 8.0, 1e-15);
}

TEST(ParseCsv, ToleratesCommentsBlankLinesAndCarriageReturns) {
  std::string text = "# exported\n\n" + preset_csv_body();
  text = std::regex_replace(text, std::regex("\n"), "\r\n");
  EXPECT_NO_THROW(parse_csv(text));
}

TEST(ParseCsv, NormalizesRawIntensities) {
  const std::string text = std::string(kCsvHeader) +
                           "\n0,0,2,0,0,2\n0,1,1,1,1,1\n1,0,3,1,1,3\n1,1,0,5,5,0\n";
  const ExperimentTable t = parse_csv(text);
  EXPECT_DOUBLE_EQ(t.record({1, 1}).i_pp, 0.5);
  EXPECT_DOUBLE_EQ(t.record({2, 1}).i_pp, 0.375);
  EXPECT_DOUBLE_EQ(correlation_M(t.record({2, 2})), -1.0);
}

TEST(ParseCsv, MissingContext) {
  const std::string text = std::string(kCsvHeader) + "\n0,0,1,0,0,1\n0,1,1,0,0,1\n1,0,1,0,0,1\n";
  EXPECT_THROW(parse_csv(text), IncompleteTableError);
}

TEST(ParseCsv, NegativeIntensityNamesRowAndColumn) {
  const std::string text = std::string(kCsvHeader) + "\n0,0,1,0,0,1\n0,1,-0.2,0,0,1\n1,0,1,0,0,1\n1,1,1,0,0,1\n";
  try {
    parse_csv(text);
    FAIL();
  } catch (const MalformedDataError& e) {
    EXPECT_EQ(e.row(), std::optional<std::size_t>(3));
    EXPECT_EQ(e.column(), std::optional<std::string>("i_pp"));
  }
}

TEST(ParseCsv, BadHeader) {
  try {
    parse_csv("alpha,beta,i_pp,i_pm,i_mp,i_mm\n0,0,1,0,0,1\n");
    FAIL();
  } catch (const MalformedDataError& e) {
    EXPECT_EQ(e.row(), std::optional<std::size_t>(1));
    EXPECT_EQ(e.column(), std::optional<std::string>("header"));
  }
  EXPECT_THROW(parse_csv(""), MalformedDataError);
}

TEST(ParseCsv, DuplicateContext) {
  const std::string text = std::string(kCsvHeader) + "\n0,0,1,0,0,1\n0,1,1,0,0,1\n0,0,1,0,0,1\n1,1,1,0,0,1\n";
  try {
    parse_csv(text);
    FAIL();
  } catch (const MalformedDataError& e) {
    EXPECT_EQ(e.row(), std::optional<std::size_t>(4));
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(ParseCsv, FieldErrors) {
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n0,0,1,0,0\n"), MalformedDataError);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n0,0,1,0,0,1,7\n"), MalformedDataError);
  try {
    parse_csv(std::string(kCsvHeader) + "\n0,0,1,x,0,1\n");
    FAIL();
  } catch (const MalformedDataError& e) {
    EXPECT_EQ(e.column(), std::optional<std::string>("i_pm"));
  }
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n0,0,0,0,0,0\n"), DegenerateRecordError);
}

TEST(IngestFile, MissingFileIsDataError) {
  EXPECT_THROW(ingest_file("/nonexistent/table.csv"), MalformedDataError);
}

// ---- reports ----

TEST(Report, PlainShowsBothLayouts) {
  const std::string chsh = emit_report(run_preset("chsh-nonseparable"), OutputFormat::Plain);
  EXPECT_NE(chsh.find("2.82843"), std::string::npos);
  EXPECT_NE(chsh.find("contextual"), std::string::npos);
  EXPECT_NE(chsh.find("timestamp:"), std::string::npos);
  EXPECT_LT(chsh.find("CHSH"), chsh.find("Kujala-Dzhafarov"));

  const std::string kd = emit_report(run_preset("kd-separable"), OutputFormat::Plain);
  EXPECT_LT(kd.find("Kujala-Dzhafarov"), kd.find("CHSH"));
  EXPECT_NE(kd.find("Delta0"), std::string::npos);
  EXPECT_NE(kd.find("margin"), std::string::npos);
  EXPECT_NE(kd.find("non-contextual"), std::string::npos);
  EXPECT_NE(kd.find("1.41421"), std::string::npos);
}

TEST(Report, CsvRoundTripsTable) {
  RunConfig config;
  config.visibility_beta1 = 0.9;
  config.visibility_beta2 = 0.8;
  config.crosstalk = 0.03;
  const ReportBundle direct = simulate(config);
  const std::string csv = emit_report(direct, OutputFormat::Csv);
  EXPECT_NE(csv.find("\n" + std::string(kCsvHeader) + "\n"), std::string::npos);
  const ExperimentTable back = parse_csv(csv);
  for (const Context& c : kContexts)
    for (int k = 0; k < 4; ++k)
      EXPECT_EQ(back.record(c).intensities()[k], direct.table.record(c).intensities()[k]);
  const InequalityReport r = kd_report(back);
  EXPECT_NEAR(r.s_chsh, direct.inequalities.s_chsh, 1e-12);
  EXPECT_NEAR(r.delta0, direct.inequalities.delta0, 1e-12);
}

TEST(Report, JsonHasProvenanceAndRoundTrips) {
  const ReportBundle b = run_preset("kd-nonseparable");
  const std::string text = emit_report(b, OutputFormat::Json);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"provenance", "table", "correlations", "s_chsh", "s_kd", "delta0", "kd_bound",
                          "margin", "verdicts", "oracle", "agreement"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["provenance"]["tool_version"], tool_version());
  EXPECT_TRUE(j["verdicts"]["contextual"].get<bool>());
  const ExperimentTable back = parse_json_table(text);
  EXPECT_NEAR(chsh_S(back), b.inequalities.s_chsh, 1e-12);
}

TEST(Report, DeterministicApartFromTimestamp) {
  for (OutputFormat f : {OutputFormat::Plain, OutputFormat::Csv, OutputFormat::Json}) {
    const std::string a = emit_report(run_preset("chsh-separable"), f);
    const std::string b = emit_report(run_preset("chsh-separable"), f);
    EXPECT_EQ(strip_timestamp(a), strip_timestamp(b));
  }
}

TEST(Report, OracleReport) {
  const std::string plain = emit_oracle_report(run_preset("chsh-nonseparable"), OutputFormat::Plain);
  EXPECT_NE(plain.find("phase-one"), std::string::npos);
  const auto j = nlohmann::json::parse(emit_oracle_report(run_preset("chsh-separable"), OutputFormat::Json));
  EXPECT_TRUE(j["oracle"]["feasible"].get<bool>());
}

// ---- harness ----

TEST(Harness, UnknownPreset) { EXPECT_THROW(run_preset("nope"), UsageError); }

TEST(Harness, PresetsUseOverrides) {
  RunConfig config;
  config.visibility_beta1 = 0.91;
  config.visibility_beta2 = 0.86;
  const ReportBundle b = run_preset("kd-nonseparable", config);
  EXPECT_NEAR(b.inequalities.s_kd[1], std::sqrt(2.0) * (0.91 + 0.86), 1e-12);
  EXPECT_EQ(b.layout, ReportLayout::KujalaDzhafarov);
  EXPECT_EQ(b.provenance.command, "preset kd-nonseparable");
}

TEST(Harness, VisibilitySweepGridAndFit) {
  VisibilitySweepSpec spec;
  spec.steps = 21;
  const VisibilitySweepResult r = visibility_sweep(RunConfig{}, spec);
  ASSERT_EQ(r.points.size(), 441u);
  for (const SweepPoint& p : r.points)
    EXPECT_NEAR(p.s_chsh, std::sqrt(2.0) * (p.v_beta1 + p.v_beta2), 1e-12);
  ASSERT_TRUE(r.best_fit.has_value());
  EXPECT_NEAR(r.best_fit->v_beta1, 0.91, 1e-12);
  EXPECT_NEAR(r.best_fit->v_beta2, 0.86, 1e-12);

  VisibilitySweepSpec bad;
  bad.steps = 1;
  EXPECT_THROW(visibility_sweep(RunConfig{}, bad), UsageError);
}

TEST(Harness, AngleSweep) {
  const auto points = angle_sweep(RunConfig{}, 8);
  EXPECT_EQ(points.size(), 64u);
  for (const AngleSweepPoint& p : points) EXPECT_LE(p.delta0, 1e-12);
}

TEST(Harness, RandomSweepIsSeededAndAgrees) {
  const auto a = random_sweep(40, 7, kDefaultDecisionTol, kDefaultFeasibilityTol);
  const auto b = random_sweep(40, 7, kDefaultDecisionTol, kDefaultFeasibilityTol);
  ASSERT_EQ(a.size(), 40u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].inequalities.margin, b[k].inequalities.margin);
    if (std::abs(a[k].inequalities.margin) > 1e-6) EXPECT_TRUE(a[k].agree);
  }
  const std::string csv = emit_random_sweep_csv(a);
  EXPECT_NE(csv.find("# agreement"), std::string::npos);
}

TEST(Harness, RandomTablesAreValid) {
  RandomTableGenerator gen(3);
  for (int n = 0; n < 100; ++n) {
    const RandomTable t = gen.next();
    ASSERT_TRUE(t.table.complete());
    EXPECT_NEAR(t.mode.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_LE(t.noise.dp_crosstalk, 0.2);
  }
}

}  // namespace
}  // namespace spinorbit

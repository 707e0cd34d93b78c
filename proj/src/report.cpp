#include "spinorbit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "spinorbit/coupling.hpp"
#include "spinorbit/ingest.hpp"

namespace spinorbit {

namespace {

using ordered_json = nlohmann::ordered_json;

// Plain output only; exact zeros of the ideal theory otherwise print as
// round-off like 6.1e-17.
constexpr double kDisplayZero = 5e-13;

std::string sig(double value, int precision) {
  if (std::abs(value) < kDisplayZero) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string context_label(Context c) {
  return "(a" + std::to_string(c.i) + ",b" + std::to_string(c.j) + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string bool_text(bool b) { return b ? "true" : "false"; }

void plain_header(std::ostringstream& out, const ReportBundle& b) {
  out << "spinorbit " << b.provenance.tool_version << " | " << b.provenance.command << "\n";
  out << "timestamp: " << b.provenance.timestamp << "\n";
  out << "config:";
  for (const auto& [k, v] : b.provenance.config) out << " " << k << "=" << v;
  out << "\n\n";
}

void plain_table(std::ostringstream& out, const ReportBundle& b) {
  const int p = b.precision;
  out << "Context intensities\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-9s %12s %12s %12s %12s %12s %12s\n", "context", "alpha_rad",
                "beta_rad", "I++", "I+-", "I-+", "I--");
  out << line;
  for (const Context& c : kContexts) {
    const IntensityRecord& r = b.table.record(c);
    std::snprintf(line, sizeof line, "  %-9s %12s %12s %12s %12s %12s %12s\n",
                  context_label(c).c_str(), sig(r.alpha, p).c_str(), sig(r.beta, p).c_str(),
                  sig(r.i_pp, p).c_str(), sig(r.i_pm, p).c_str(), sig(r.i_mp, p).c_str(),
                  sig(r.i_mm, p).c_str());
    out << line;
  }
  out << "\n";
}

void plain_chsh(std::ostringstream& out, const ReportBundle& b) {
  const int p = b.precision;
  out << "CHSH\n";
  for (const ContextCorrelation& cc : b.correlations) {
    const std::string label = "M" + context_label(cc.context);
    out << "  " << label << std::string(12 - label.size(), ' ') << sig(cc.m, p) << "\n";
  }
  out << "  S           " << sig(b.inequalities.s_chsh, p)
      << (b.inequalities.chsh_violated ? "   violates |S| <= 2" : "   within |S| <= 2") << "\n\n";
}

void plain_kd(std::ostringstream& out, const ReportBundle& b) {
  const int p = b.precision;
  const InequalityReport& r = b.inequalities;
  out << "Kujala-Dzhafarov\n";
  for (std::size_t k = 0; k < 4; ++k)
    out << "  S_KD" << k + 1 << "       " << sig(r.s_kd[k], p) << "\n";
  out << "  Delta0      " << sig(r.delta0, p) << "\n";
  out << "  bound       " << sig(r.kd_bound, p) << "   = 2(1 + Delta0)\n";
  out << "  margin      " << sig(r.margin, p) << "   = max S_KD - bound\n";
  out << "  verdict     " << (r.contextual ? "contextual" : "non-contextual") << "\n\n";
}

void plain_expectations(std::ostringstream& out, const ReportBundle& b) {
  const int p = b.precision;
  out << "Expectations\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-9s %12s %12s %12s\n", "context", "<A>", "<B>", "<AB>");
  out << line;
  for (const ContextCorrelation& cc : b.correlations) {
    std::snprintf(line, sizeof line, "  %-9s %12s %12s %12s\n", context_label(cc.context).c_str(),
                  sig(cc.e.a, p).c_str(), sig(cc.e.b, p).c_str(), sig(cc.e.ab, p).c_str());
    out << line;
  }
  out << "\n";
}

void plain_oracle(std::ostringstream& out, const ReportBundle& b) {
  const int p = b.precision;
  out << "Coupling oracle\n";
  out << "  multimaximal coupling   "
      << (b.oracle.feasible ? "exists (non-contextual)" : "none (contextual)") << "\n";
  out << "  phase-one objective     " << sig(b.oracle.phase_one_objective, p) << "\n";
  out << "  max residual            " << sig(b.oracle.max_constraint_residual, p) << "\n";
  out << "  agrees with inequalities " << yes_no(b.agree) << "\n";
}

ordered_json provenance_json(const ReportBundle& b) {
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : b.provenance.config) config[k] = v;
  return {{"command", b.provenance.command},
          {"tool_version", b.provenance.tool_version},
          {"timestamp", b.provenance.timestamp},
          {"config", config}};
}

ordered_json oracle_json(const ReportBundle& b) {
  return {{"feasible", b.oracle.feasible},
          {"max_constraint_residual", b.oracle.max_constraint_residual},
          {"phase_one_objective", b.oracle.phase_one_objective}};
}

void csv_provenance(std::ostringstream& out, const ReportBundle& b) {
  out << "# spinorbit " << b.provenance.tool_version << "\n";
  out << "# command=" << b.provenance.command << "\n";
  out << "# timestamp=" << b.provenance.timestamp << "\n";
  for (const auto& [k, v] : b.provenance.config) out << "# config." << k << "=" << v << "\n";
}

}  // namespace

std::string emit_report(const ReportBundle& b, OutputFormat format) {
  std::ostringstream out;
  const InequalityReport& r = b.inequalities;

  switch (format) {
    case OutputFormat::Plain:
      plain_header(out, b);
      plain_table(out, b);
      if (b.layout == ReportLayout::Chsh) {
        plain_chsh(out, b);
        plain_kd(out, b);
      } else {
        plain_kd(out, b);
        plain_chsh(out, b);
      }
      plain_expectations(out, b);
      plain_oracle(out, b);
      break;

    case OutputFormat::Csv:
      csv_provenance(out, b);
      out << kCsvHeader << "\n";
      for (const Context& c : kContexts) {
        const IntensityRecord& rec = b.table.record(c);
        out << format_double(rec.alpha) << "," << format_double(rec.beta) << ","
            << format_double(rec.i_pp) << "," << format_double(rec.i_pm) << ","
            << format_double(rec.i_mp) << "," << format_double(rec.i_mm) << "\n";
      }
      for (const ContextCorrelation& cc : b.correlations)
        out << "# m" << cc.context.i << cc.context.j << "=" << format_double(cc.m) << "\n";
      out << "# s_chsh=" << format_double(r.s_chsh) << "\n";
      for (std::size_t k = 0; k < 4; ++k)
        out << "# s_kd" << k + 1 << "=" << format_double(r.s_kd[k]) << "\n";
      out << "# delta0=" << format_double(r.delta0) << "\n";
      out << "# kd_bound=" << format_double(r.kd_bound) << "\n";
      out << "# margin=" << format_double(r.margin) << "\n";
      out << "# chsh_violated=" << bool_text(r.chsh_violated) << "\n";
      out << "# contextual=" << bool_text(r.contextual) << "\n";
      out << "# oracle_feasible=" << bool_text(b.oracle.feasible) << "\n";
      out << "# agreement=" << bool_text(b.agree) << "\n";
      break;

    case OutputFormat::Json: {
      ordered_json j;
      j["provenance"] = provenance_json(b);
      ordered_json table = ordered_json::array();
      for (const Context& c : kContexts) {
        const IntensityRecord& rec = b.table.record(c);
        table.push_back({{"alpha_rad", rec.alpha},
                         {"beta_rad", rec.beta},
                         {"i_pp", rec.i_pp},
                         {"i_pm", rec.i_pm},
                         {"i_mp", rec.i_mp},
                         {"i_mm", rec.i_mm}});
      }
      j["table"] = table;
      ordered_json corr = ordered_json::array();
      for (const ContextCorrelation& cc : b.correlations)
        corr.push_back({{"context", std::to_string(cc.context.i) + std::to_string(cc.context.j)},
                        {"m", cc.m},
                        {"a", cc.e.a},
                        {"b", cc.e.b},
                        {"ab", cc.e.ab}});
      j["correlations"] = corr;
      j["s_chsh"] = r.s_chsh;
      j["s_kd"] = r.s_kd;
      j["delta0"] = r.delta0;
      j["kd_bound"] = r.kd_bound;
      j["margin"] = r.margin;
      j["decision_tol"] = r.decision_tol;
      j["verdicts"] = {{"chsh_violated", r.chsh_violated}, {"contextual", r.contextual}};
      j["oracle"] = oracle_json(b);
      j["agreement"] = b.agree;
      out << j.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

std::string emit_oracle_report(const ReportBundle& b, OutputFormat format) {
  std::ostringstream out;
  const auto targets = connection_targets(b.table);
  switch (format) {
    case OutputFormat::Plain: {
      plain_header(out, b);
      const int p = b.precision;
      out << "Connection mismatch targets\n";
      const char* names[] = {"A11/A12", "A21/A22", "B11/B21", "B12/B22"};
      for (std::size_t k = 0; k < 4; ++k) out << "  " << names[k] << "   " << sig(targets[k], p) << "\n";
      out << "\n";
      plain_oracle(out, b);
      break;
    }
    case OutputFormat::Csv:
      csv_provenance(out, b);
      out << "feasible,max_constraint_residual,phase_one_objective,target_a1,target_a2,target_b1,target_b2\n";
      out << bool_text(b.oracle.feasible) << "," << format_double(b.oracle.max_constraint_residual) << ","
          << format_double(b.oracle.phase_one_objective);
      for (double t : targets) out << "," << format_double(t);
      out << "\n";
      break;
    case OutputFormat::Json: {
      ordered_json j;
      j["provenance"] = provenance_json(b);
      j["oracle"] = oracle_json(b);
      j["connection_targets"] = targets;
      j["agreement"] = b.agree;
      out << j.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

std::string emit_visibility_sweep_csv(const VisibilitySweepResult& sweep) {
  std::ostringstream out;
  out << "v_beta1,v_beta2,s_chsh,s_kd1,s_kd2,s_kd3,s_kd4,delta0\n";
  for (const SweepPoint& p : sweep.points) {
    out << format_double(p.v_beta1) << "," << format_double(p.v_beta2) << "," << format_double(p.s_chsh);
    for (double s : p.s_kd) out << "," << format_double(s);
    out << "," << format_double(p.delta0) << "\n";
  }
  if (sweep.best_fit)
    out << "# best_fit v_beta1=" << format_double(sweep.best_fit->v_beta1)
        << " v_beta2=" << format_double(sweep.best_fit->v_beta2)
        << " s_chsh=" << format_double(sweep.best_fit->s_chsh) << "\n";
  else
    out << "# best_fit none\n";
  return out.str();
}

std::string emit_angle_sweep_csv(const std::vector<AngleSweepPoint>& sweep) {
  std::ostringstream out;
  out << "alpha2_rad,beta2_rad,s_chsh,s_kd1,s_kd2,s_kd3,s_kd4,delta0\n";
  for (const AngleSweepPoint& p : sweep) {
    out << format_double(p.alpha2) << "," << format_double(p.beta2) << "," << format_double(p.s_chsh);
    for (double s : p.s_kd) out << "," << format_double(s);
    out << "," << format_double(p.delta0) << "\n";
  }
  return out.str();
}

std::string emit_random_sweep_csv(const std::vector<RandomSweepRow>& rows) {
  std::ostringstream out;
  out << "index,s_chsh,s_kd1,s_kd2,s_kd3,s_kd4,delta0,kd_bound,margin,contextual,oracle_feasible,agreement\n";
  std::size_t agreed = 0;
  for (const RandomSweepRow& row : rows) {
    const InequalityReport& r = row.inequalities;
    out << row.index << "," << format_double(r.s_chsh);
    for (double s : r.s_kd) out << "," << format_double(s);
    out << "," << format_double(r.delta0) << "," << format_double(r.kd_bound) << ","
        << format_double(r.margin) << "," << bool_text(r.contextual) << "," << bool_text(row.feasible)
        << "," << bool_text(row.agree) << "\n";
    agreed += row.agree ? 1 : 0;
  }
  out << "# agreement " << agreed << "/" << rows.size() << "\n";
  return out.str();
}

}  // namespace spinorbit

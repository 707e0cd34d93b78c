#include "spinorbit/measurement.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

constexpr double kAngleMatchTol = 1e-12;
constexpr double kUnitSumTol = 1e-12;

// Index of `value` in `seen` (within tolerance), appending it if new.
std::size_t angle_slot(std::vector<double>& seen, double value) {
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (std::abs(seen[k] - value) <= kAngleMatchTol) return k;
  seen.push_back(value);
  return seen.size() - 1;
}

}  // namespace

AngleSet AngleSet::preset() {
  using std::numbers::pi;
  return {pi / 8.0, 3.0 * pi / 8.0, 0.0, pi / 4.0};
}

void AngleSet::validate() const {
  for (double a : {alpha1, alpha2, beta1, beta2})
    if (!std::isfinite(a)) throw UsageError("analyzer angles must be finite");
}

IntensityRecord normalize_record(std::span<const double, 4> raw, double alpha, double beta) {
  static const char* const kNames[] = {"i_pp", "i_pm", "i_mp", "i_mm"};
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!std::isfinite(raw[k])) throw MalformedDataError("non-finite intensity", std::nullopt, kNames[k]);
    if (raw[k] < 0.0) throw MalformedDataError("negative intensity", std::nullopt, kNames[k]);
    sum += raw[k];
  }
  if (!(sum > 0.0)) throw DegenerateRecordError("record has zero total intensity");
  // Leave already-normalized data bit-for-bit unchanged so tables round-trip exactly.
  if (std::abs(sum - 1.0) <= kUnitSumTol) return {alpha, beta, raw[0], raw[1], raw[2], raw[3]};
  return {alpha, beta, raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum};
}

bool is_normalized(const IntensityRecord& r) {
  for (double v : r.intensities())
    if (!(v >= 0.0)) return false;
  return std::abs(r.i_pp + r.i_pm + r.i_mp + r.i_mm - 1.0) <= kRecordSumTol;
}

IntensityRecord measure_intensities(const SpinOrbitMode& mode, double alpha, double beta,
                                    const NoiseModel& noise) {
  const OpticalElement analyzer = then(hwp(alpha / 2.0), dove_prism(beta / 2.0, noise));
  const ParitySplit split = mzim_sort(spinorbit::apply(analyzer, mode), noise, beta);
  const PortIntensities raw = detect(split);
  return normalize_record(raw, alpha, beta);
}

double correlation_M(const IntensityRecord& r) { return r.i_pp + r.i_mm - r.i_pm - r.i_mp; }

Expectations expectations(const IntensityRecord& r) {
  return {r.i_pp - r.i_mm + r.i_pm - r.i_mp, r.i_pp - r.i_mm - r.i_pm + r.i_mp, correlation_M(r)};
}

bool ExperimentTable::complete() const {
  for (const auto& r : records_)
    if (!r) return false;
  return true;
}

const IntensityRecord& ExperimentTable::record(Context c) const {
  const auto& r = records_[c.slot()];
  if (!r)
    throw IncompleteTableError("missing context (alpha" + std::to_string(c.i) + ", beta" +
                               std::to_string(c.j) + ")");
  return *r;
}

ExperimentTable assemble_table(std::span<const IntensityRecord> records,
                               std::span<const std::size_t> row_numbers) {
  std::vector<double> alphas, betas;
  std::array<bool, 4> filled{};
  std::array<IntensityRecord, 4> slots{};

  for (std::size_t n = 0; n < records.size(); ++n) {
    const auto& r = records[n];
    const std::size_t row = n < row_numbers.size() ? row_numbers[n] : n + 1;
    const std::size_t ai = angle_slot(alphas, r.alpha);
    const std::size_t bj = angle_slot(betas, r.beta);
    if (ai > 1) throw MalformedDataError("more than two distinct alpha settings", row, "alpha_rad");
    if (bj > 1) throw MalformedDataError("more than two distinct beta settings", row, "beta_rad");
    const Context c{static_cast<int>(ai) + 1, static_cast<int>(bj) + 1};
    if (filled[c.slot()]) throw MalformedDataError("duplicate context", row, "alpha_rad,beta_rad");
    filled[c.slot()] = true;
    slots[c.slot()] = r;
  }

  AngleSet angles;
  if (!alphas.empty()) angles.alpha1 = angles.alpha2 = alphas[0];
  if (alphas.size() > 1) angles.alpha2 = alphas[1];
  if (!betas.empty()) angles.beta1 = angles.beta2 = betas[0];
  if (betas.size() > 1) angles.beta2 = betas[1];

  ExperimentTable table(angles);
  for (const Context& c : kContexts) {
    if (!filled[c.slot()])
      throw IncompleteTableError("table has " + std::to_string(records.size()) +
                                 " rows; missing context (alpha" + std::to_string(c.i) + ", beta" +
                                 std::to_string(c.j) + ")");
    table.set(c, slots[c.slot()]);
  }
  return table;
}

ExperimentTable simulate_table(const SpinOrbitMode& mode, const AngleSet& angles,
                               const NoiseModel& noise) {
  ExperimentTable table(angles);
  for (const Context& c : kContexts)
    table.set(c, measure_intensities(mode, angles.alpha(c.i), angles.beta(c.j), noise));
  return table;
}

CorrelationSet correlations(const ExperimentTable& table) {
  CorrelationSet out;
  for (const Context& c : kContexts) {
    const IntensityRecord& r = table.record(c);
    out[c.slot()] = {c, correlation_M(r), expectations(r)};
  }
  return out;
}

}  // namespace spinorbit

#pragma once

#include <array>
#include <optional>
#include <span>

#include "spinorbit/bench.hpp"
#include "spinorbit/mode.hpp"

namespace spinorbit {

/// Analyzer settings (radians): alpha for the half-wave plate side, beta for
/// the Dove prism side. The plate and prism are physically set to half of
/// these angles.
struct AngleSet {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  /// pi/8, 3pi/8, 0, pi/4: the CHSH-maximizing set.
  static AngleSet preset();

  double alpha(int i) const { return i == 1 ? alpha1 : alpha2; }
  double beta(int j) const { return j == 1 ? beta1 : beta2; }

  /// Throws UsageError on non-finite angles.
  void validate() const;
};

/// One measurement context (alpha_i, beta_j), 1-based as in the usual
/// A_ij / B_ij notation.
struct Context {
  int i = 1;
  int j = 1;

  /// Position in table order 11, 12, 21, 22.
  int slot() const { return 2 * (i - 1) + (j - 1); }
  friend bool operator==(const Context&, const Context&) = default;
};

inline constexpr std::array<Context, 4> kContexts = {Context{1, 1}, Context{1, 2}, Context{2, 1},
                                                     Context{2, 2}};

/// Normalized four-output intensities of one context. The first sign is the
/// polarization outcome (H = +), the second the transverse-mode outcome
/// (h = +): pp <-> Hh, pm <-> Hv, mp <-> Vh, mm <-> Vv.
struct IntensityRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double i_pp = 0.0;
  double i_pm = 0.0;
  double i_mp = 0.0;
  double i_mm = 0.0;

  std::array<double, 4> intensities() const { return {i_pp, i_pm, i_mp, i_mm}; }
};

inline constexpr double kRecordSumTol = 1e-9;

/// Divides raw (pp, pm, mp, mm) intensities by their sum.
/// Throws MalformedDataError on negative or non-finite input and
/// DegenerateRecordError when the sum is zero.
IntensityRecord normalize_record(std::span<const double, 4> raw, double alpha, double beta);

/// True when all entries are nonnegative and sum to one within kRecordSumTol.
bool is_normalized(const IntensityRecord& record);

/// Full measurement stage: HWP at alpha/2, Dove prism at beta/2, parity
/// sorter, PBS2/PBS3 detection, normalization.
IntensityRecord measure_intensities(const SpinOrbitMode& mode, double alpha, double beta,
                                    const NoiseModel& noise = NoiseModel::ideal());

/// I++ + I-- - I+- - I-+
double correlation_M(const IntensityRecord& record);

struct Expectations {
  double a = 0.0;   ///< <A>, polarization side
  double b = 0.0;   ///< <B>, transverse-mode side
  double ab = 0.0;  ///< <AB>
};

Expectations expectations(const IntensityRecord& record);

/// The four records of a 2x2 experiment.
class ExperimentTable {
 public:
  ExperimentTable() = default;
  explicit ExperimentTable(const AngleSet& angles) : angles_(angles) {}

  const AngleSet& angles() const { return angles_; }

  void set(Context c, const IntensityRecord& record) { records_[c.slot()] = record; }
  bool has(Context c) const { return records_[c.slot()].has_value(); }
  bool complete() const;

  /// Throws IncompleteTableError if the context was never filled.
  const IntensityRecord& record(Context c) const;

 private:
  AngleSet angles_;
  std::array<std::optional<IntensityRecord>, 4> records_;
};

/// Assembles a table from records in any order. The first distinct alpha
/// (beta) encountered becomes alpha1 (beta1). Throws MalformedDataError on
/// duplicate contexts or more than two distinct angles per side, and
/// IncompleteTableError when a context is missing. Errors name the row from
/// `row_numbers` when given, else the 1-based position in `records`.
ExperimentTable assemble_table(std::span<const IntensityRecord> records,
                               std::span<const std::size_t> row_numbers = {});

/// Simulates all four contexts of `angles` on `mode`.
ExperimentTable simulate_table(const SpinOrbitMode& mode, const AngleSet& angles,
                               const NoiseModel& noise = NoiseModel::ideal());

struct ContextCorrelation {
  Context context;
  double m = 0.0;
  Expectations e;
};

using CorrelationSet = std::array<ContextCorrelation, 4>;

CorrelationSet correlations(const ExperimentTable& table);

}  // namespace spinorbit

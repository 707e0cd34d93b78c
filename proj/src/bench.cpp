#include "spinorbit/bench.hpp"

#include <cmath>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

constexpr double kBetaMatchTol = 1e-9;

Operator on_polarization(const Eigen::Matrix2cd& p) {
  Operator out = Operator::Zero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int m = 0; m < 2; ++m) out(2 * r + m, 2 * c + m) = p(r, c);
  return out;
}

Operator on_transverse(const Eigen::Matrix2cd& d) {
  Operator out = Operator::Zero();
  for (int p = 0; p < 2; ++p)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(2 * p + r, 2 * p + c) = d(r, c);
  return out;
}

void check_unit_interval(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0)
    throw UsageError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

}  // namespace

double NoiseModel::visibility(double beta) const {
  for (const auto& [setting, v] : visibility_by_beta)
    if (std::abs(setting - beta) <= kBetaMatchTol) return v;
  return default_visibility;
}

void NoiseModel::validate() const {
  for (const auto& [setting, v] : visibility_by_beta) {
    if (!std::isfinite(setting)) throw UsageError("visibility setting angle must be finite");
    check_unit_interval(v, "visibility");
  }
  check_unit_interval(default_visibility, "visibility");
  check_unit_interval(dp_crosstalk, "Dove prism crosstalk");
}

double ParitySplit::even_weight() const {
  const double v = visibility;
  return 0.5 * (1.0 + v) * even_branch.squaredNorm() + 0.5 * (1.0 - v) * odd_branch.squaredNorm();
}

double ParitySplit::odd_weight() const {
  const double v = visibility;
  return 0.5 * (1.0 + v) * odd_branch.squaredNorm() + 0.5 * (1.0 - v) * even_branch.squaredNorm();
}

OpticalElement identity_element() { return {}; }

OpticalElement hwp(double theta) {
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  Eigen::Matrix2cd jones;
  jones << c, s, s, -c;
  return {on_polarization(jones), ElementKind::HalfWavePlate};
}

OpticalElement dove_prism(double theta, const NoiseModel& noise) {
  // Image reflection about the axis at -theta, acting on (HG10, HG01). The
  // sign of the axis fixes the correlation law of the prepared Psi- to
  // cos 2(beta - alpha).
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  Eigen::Matrix2cd doublet;
  doublet << c, -s, -s, -c;
  Operator m = on_transverse(doublet);

  if (theta != 0.0 && noise.dp_crosstalk > 0.0) {
    // H -> sqrt(1-e) H + sqrt(e) V, V -> -sqrt(e) H + sqrt(1-e) V
    const double keep = std::sqrt(1.0 - noise.dp_crosstalk);
    const double flip = std::sqrt(noise.dp_crosstalk);
    Eigen::Matrix2cd mix;
    mix << keep, -flip, flip, keep;
    m = on_polarization(mix) * m;
  }
  return {m, ElementKind::DovePrism};
}

OpticalElement pbs_port(PbsPort port) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  if (port == PbsPort::TransmitH)
    p(0, 0) = 1.0;
  else
    p(1, 1) = 1.0;
  return {on_polarization(p), ElementKind::PbsPort};
}

OpticalElement spatial_filter() { return identity_element(); }

OpticalElement then(const OpticalElement& first, const OpticalElement& second) {
  return {second.matrix * first.matrix, ElementKind::Composite};
}

Amplitudes apply(const OpticalElement& element, const Amplitudes& amplitudes) {
  return element.matrix * amplitudes;
}

Amplitudes apply(const OpticalElement& element, const SpinOrbitMode& mode) {
  return spinorbit::apply(element, mode.amplitudes());
}

SpinOrbitMode s_plate(Polarization input) {
  if (input == Polarization::V) return make_mode(1.0, 0.0, 0.0, -1.0);
  return make_mode(1.0, 0.0, 0.0, 1.0);
}

Projection pbs_project(const Amplitudes& amplitudes, PbsPort port) {
  Projection out;
  out.amplitudes = spinorbit::apply(pbs_port(port), amplitudes);
  out.weight = out.amplitudes.squaredNorm();
  return out;
}

Projection pbs_project(const SpinOrbitMode& mode, PbsPort port) {
  return pbs_project(mode.amplitudes(), port);
}

SpinOrbitMode pbs_filter(const SpinOrbitMode& mode, PbsPort port) {
  return SpinOrbitMode::normalized(pbs_project(mode, port).amplitudes);
}

ParitySplit mzim_sort(const Amplitudes& amplitudes, const NoiseModel& noise, double beta_setting) {
  ParitySplit split;
  split.visibility = noise.visibility(beta_setting);
  for (Basis b : {Basis::Hh, Basis::Vv}) split.even_branch[index(b)] = amplitudes[index(b)];
  for (Basis b : {Basis::Hv, Basis::Vh}) split.odd_branch[index(b)] = amplitudes[index(b)];
  return split;
}

PortIntensities detect(const ParitySplit& split) {
  const double own = 0.5 * (1.0 + split.visibility);
  const double leak = 0.5 * (1.0 - split.visibility);

  // Each sorter output carries its own parity plus the leaked other parity;
  // the two contributions add in intensity.
  auto port = [&](const Amplitudes& main, const Amplitudes& leaked, PbsPort pbs) {
    return own * pbs_project(main, pbs).weight + leak * pbs_project(leaked, pbs).weight;
  };

  return {
      port(split.even_branch, split.odd_branch, PbsPort::TransmitH),
      port(split.odd_branch, split.even_branch, PbsPort::TransmitH),
      port(split.odd_branch, split.even_branch, PbsPort::ReflectV),
      port(split.even_branch, split.odd_branch, PbsPort::ReflectV),
  };
}

}  // namespace spinorbit

#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "spinorbit/mode.hpp"

namespace spinorbit {

using Operator = Eigen::Matrix4cd;

enum class ElementKind { Identity, HalfWavePlate, DovePrism, PbsPort, Composite };

/// A linear operator on the four-dimensional spin-orbit space.
struct OpticalElement {
  Operator matrix = Operator::Identity();
  ElementKind kind = ElementKind::Identity;
};

/// Imperfections of the measurement stage.
///
/// Interferometer visibility is looked up by the Dove prism setting (beta);
/// settings without an entry use `default_visibility`. `dp_crosstalk` is the
/// fraction of intensity whose polarization a rotated Dove prism flips.
struct NoiseModel {
  std::vector<std::pair<double, double>> visibility_by_beta;
  double default_visibility = 1.0;
  double dp_crosstalk = 0.0;

  static NoiseModel ideal() { return {}; }

  double visibility(double beta) const;

  /// Throws UsageError if any parameter is outside [0, 1] or not finite.
  void validate() const;
};

enum class Polarization { H, V };
enum class PbsPort { TransmitH, ReflectV };

struct Projection {
  Amplitudes amplitudes;
  double weight = 0.0;
};

/// Ideal parity sorting of one input plus the interferometer visibility.
/// The branches hold the even {Hh, Vv} and odd {Hv, Vh} amplitudes; with
/// visibility V each output port also receives (1 - V)/2 of the other
/// parity's intensity, incoherently.
struct ParitySplit {
  Amplitudes even_branch = Amplitudes::Zero();
  Amplitudes odd_branch = Amplitudes::Zero();
  double visibility = 1.0;

  double even_weight() const;
  double odd_weight() const;
};

/// Raw intensities at the four detector positions after PBS2/PBS3, in
/// (even-transmit, odd-transmit, odd-reflect, even-reflect) order, i.e. the
/// (++, +-, -+, --) outcomes.
using PortIntensities = std::array<double, 4>;

OpticalElement identity_element();

/// Half-wave plate with fast axis at `theta`. Polarization only.
OpticalElement hwp(double theta);

/// Dove prism rotated by `theta`; acts on the transverse doublet and, when
/// rotated, leaks `noise.dp_crosstalk` of the intensity into the orthogonal
/// polarization.
OpticalElement dove_prism(double theta, const NoiseModel& noise = NoiseModel::ideal());

/// Projector onto one output port of a polarizing beam splitter.
OpticalElement pbs_port(PbsPort port);

/// Mode clean-up filter; the abstract states carry no spatial noise, so this
/// is the identity.
OpticalElement spatial_filter();

/// `first` followed by `second`.
OpticalElement then(const OpticalElement& first, const OpticalElement& second);

Amplitudes apply(const OpticalElement& element, const Amplitudes& amplitudes);
Amplitudes apply(const OpticalElement& element, const SpinOrbitMode& mode);

/// Output of a linearly polarized Gaussian beam through the S-plate.
SpinOrbitMode s_plate(Polarization input);

Projection pbs_project(const Amplitudes& amplitudes, PbsPort port);
Projection pbs_project(const SpinOrbitMode& mode, PbsPort port);

/// Keeps one PBS port and renormalizes; used in state preparation.
SpinOrbitMode pbs_filter(const SpinOrbitMode& mode, PbsPort port);

/// Parity sorter at its set point, with the visibility for `beta_setting`.
ParitySplit mzim_sort(const Amplitudes& amplitudes, const NoiseModel& noise, double beta_setting);

/// PBS2/PBS3 detection of both sorter outputs.
PortIntensities detect(const ParitySplit& split);

}  // namespace spinorbit

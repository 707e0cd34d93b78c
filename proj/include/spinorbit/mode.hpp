#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace spinorbit {

using Complex = std::complex<double>;

/// Raw amplitudes on the {Hh, Hv, Vh, Vv} basis. Not necessarily normalized;
/// projector outputs live here.
using Amplitudes = Eigen::Vector4cd;

/// Basis positions. Upper-case letter is the polarization (H/V), lower-case
/// the first-order Hermite-Gauss mode (h = HG10, v = HG01).
enum class Basis : int { Hh = 0, Hv = 1, Vh = 2, Vv = 3 };

constexpr int index(Basis b) { return static_cast<int>(b); }

/// A normalized spin-orbit mode.
///
/// Coefficient names in the usual field expansion
///   E = c1 HG01 e_V + c2 HG01 e_H + c3 HG10 e_V + c4 HG10 e_H
/// map onto the stored amplitudes as c1 = vv, c2 = hv, c3 = vh, c4 = hh.
class SpinOrbitMode {
 public:
  /// Scales `raw` to unit norm. Throws ZeroModeError on an all-zero input.
  static SpinOrbitMode normalized(const Amplitudes& raw);

  Complex hh() const { return a_[index(Basis::Hh)]; }
  Complex hv() const { return a_[index(Basis::Hv)]; }
  Complex vh() const { return a_[index(Basis::Vh)]; }
  Complex vv() const { return a_[index(Basis::Vv)]; }
  Complex operator[](Basis b) const { return a_[index(b)]; }

  const Amplitudes& amplitudes() const { return a_; }

 private:
  explicit SpinOrbitMode(const Amplitudes& a) : a_(a) {}
  Amplitudes a_;
};

SpinOrbitMode make_mode(Complex a_hh, Complex a_hv, Complex a_vh, Complex a_vv);

/// Unit basis mode, e.g. basis_mode(Basis::Hh) for the separable |Hh>.
SpinOrbitMode basis_mode(Basis b);

/// Radial (Psi) and azimuthal (Phi) maximally non-separable modes.
enum class BellLabel { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::PsiPlus, BellLabel::PsiMinus, BellLabel::PhiPlus, BellLabel::PhiMinus};

SpinOrbitMode bell_mode(BellLabel label);

std::string_view to_string(BellLabel label);

/// Non-separability measure 2|c1 c4 - c2 c3|, in [0, 1].
double concurrence(const SpinOrbitMode& mode);

/// |<a, b>|; equals 1 when the modes differ only by a global phase.
double overlap(const SpinOrbitMode& a, const SpinOrbitMode& b);

/// Coefficients on the rotated product basis
/// {HG+ e_a+, HG+ e_a-, HG- e_a+, HG- e_a-} with
///   e_a+ = cos(a) e_V + sin(a) e_H,   e_a- = -sin(a) e_V + cos(a) e_H,
///   HG+  = cos(b) HG01 + sin(b) HG10, HG-  = sin(b) HG01 - cos(b) HG10.
/// First sign is the transverse mode, second the polarization.
struct RotatedDecomposition {
  Complex d_pp, d_pm, d_mp, d_mm;
  double alpha = 0.0;
  double beta = 0.0;

  /// Squared magnitudes in (pp, pm, mp, mm) order.
  std::array<double, 4> intensities() const {
    return {std::norm(d_pp), std::norm(d_pm), std::norm(d_mp), std::norm(d_mm)};
  }
};

RotatedDecomposition rotated_decomposition(const SpinOrbitMode& mode, double alpha, double beta);

}  // namespace spinorbit

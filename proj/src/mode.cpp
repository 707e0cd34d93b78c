#include "spinorbit/mode.hpp"

#include <cmath>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Product of a polarization vector (H, V) and a transverse vector (h, v),
// laid out in basis order.
Eigen::Vector4d product_vector(double pol_h, double pol_v, double mode_h, double mode_v) {
  return {pol_h * mode_h, pol_h * mode_v, pol_v * mode_h, pol_v * mode_v};
}

}  // namespace

SpinOrbitMode SpinOrbitMode::normalized(const Amplitudes& raw) {
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ZeroModeError();
  return SpinOrbitMode(raw / norm);
}

SpinOrbitMode make_mode(Complex a_hh, Complex a_hv, Complex a_vh, Complex a_vv) {
  Amplitudes raw;
  raw << a_hh, a_hv, a_vh, a_vv;
  return SpinOrbitMode::normalized(raw);
}

SpinOrbitMode basis_mode(Basis b) {
  Amplitudes raw = Amplitudes::Zero();
  raw[index(b)] = 1.0;
  return SpinOrbitMode::normalized(raw);
}

SpinOrbitMode bell_mode(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus:
      return make_mode(kInvSqrt2, 0.0, 0.0, kInvSqrt2);
    case BellLabel::PsiMinus:
      return make_mode(kInvSqrt2, 0.0, 0.0, -kInvSqrt2);
    case BellLabel::PhiPlus:
      return make_mode(0.0, kInvSqrt2, kInvSqrt2, 0.0);
    case BellLabel::PhiMinus:
      // HG10 e_V - HG01 e_H
      return make_mode(0.0, -kInvSqrt2, kInvSqrt2, 0.0);
  }
  throw Error("unknown Bell label");
}

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus: return "PsiPlus";
    case BellLabel::PsiMinus: return "PsiMinus";
    case BellLabel::PhiPlus: return "PhiPlus";
    case BellLabel::PhiMinus: return "PhiMinus";
  }
  return "?";
}

double concurrence(const SpinOrbitMode& mode) {
  // c1 c4 - c2 c3 with c1 = vv, c2 = hv, c3 = vh, c4 = hh
  return 2.0 * std::abs(mode.vv() * mode.hh() - mode.hv() * mode.vh());
}

double overlap(const SpinOrbitMode& a, const SpinOrbitMode& b) {
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

RotatedDecomposition rotated_decomposition(const SpinOrbitMode& mode, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);

  // (H, V) components
  const double pol_plus_h = sa, pol_plus_v = ca;
  const double pol_minus_h = ca, pol_minus_v = -sa;
  // (h = HG10, v = HG01) components
  const double hg_plus_h = sb, hg_plus_v = cb;
  const double hg_minus_h = -cb, hg_minus_v = sb;

  const Amplitudes& a = mode.amplitudes();
  auto coeff = [&](const Eigen::Vector4d& basis_vector) {
    return basis_vector.cast<Complex>().dot(a);
  };

  RotatedDecomposition out;
  out.alpha = alpha;
  out.beta = beta;
  out.d_pp = coeff(product_vector(pol_plus_h, pol_plus_v, hg_plus_h, hg_plus_v));
  out.d_pm = coeff(product_vector(pol_minus_h, pol_minus_v, hg_plus_h, hg_plus_v));
  out.d_mp = coeff(product_vector(pol_plus_h, pol_plus_v, hg_minus_h, hg_minus_v));
  out.d_mm = coeff(product_vector(pol_minus_h, pol_minus_v, hg_minus_h, hg_minus_v));
  return out;
}

}  // namespace spinorbit

#include "deficitx/measurement.hpp"

#include <cmath>
#include <numbers>

namespace deficitx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kLogArgFloor = 1e-14;
constexpr double kDenFloor = 1e-12;

}  // namespace

MeasurementAngles::MeasurementAngles(double theta_in, double phi_in) noexcept {
  double th = std::fmod(theta_in, kTau);
  if (th < 0.0) th += kTau;
  double ph = phi_in;
  if (th > kPi) {  // same direction, reflected through the axis
    th = kTau - th;
    ph += kPi;
  }
  ph = std::fmod(ph, kTau);
  if (ph < 0.0) ph += kTau;
  theta = th;
  phi = ph;
}

ZVector direction(const MeasurementAngles& angles) noexcept {
  const double st = std::sin(angles.theta);
  return {st * std::cos(angles.phi), st * std::sin(angles.phi), std::cos(angles.theta)};
}

ZVector unitary_to_direction(double t, double y1, double y2, double y3) {
  const double norm2 = t * t + y1 * y1 + y2 * y2 + y3 * y3;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("unitary_to_direction: parameters not normalized");
  }
  ZVector z;
  z.z1 = 2.0 * (-t * y2 + y1 * y3);
  z.z2 = 2.0 * (t * y1 + y2 * y3);
  z.z3 = t * t + y3 * y3 - y1 * y1 - y2 * y2;
  const double n = std::sqrt(z.z1 * z.z1 + z.z2 * z.z2 + z.z3 * z.z3);
  z.z1 /= n;
  z.z2 /= n;
  z.z3 /= n;
  return z;
}

PostMeasurementSpectrum post_measurement_spectrum(const BlochX& s, const ZVector& z) noexcept {
  PostMeasurementSpectrum out;
  out.p_plus = 1.0 + s.y * z.z3;
  out.p_minus = 1.0 - s.y * z.z3;
  out.R = s.t1 * s.t1 * z.z1 * z.z1 + s.t2 * s.t2 * z.z2 * z.z2;
  const double ap = s.x + s.t3 * z.z3;
  const double am = s.x - s.t3 * z.z3;
  out.S_plus = ap * ap;
  out.S_minus = am * am;
  const double qp = std::sqrt(out.R + out.S_plus);
  const double qm = std::sqrt(out.R + out.S_minus);
  out.lambda1 = 0.25 * (out.p_plus + qp);
  out.lambda2 = 0.25 * (out.p_plus - qp);
  out.lambda3 = 0.25 * (out.p_minus + qm);
  out.lambda4 = 0.25 * (out.p_minus - qm);
  return out;
}

double g_value(const BlochX& s, const MeasurementAngles& angles) noexcept {
  const PostMeasurementSpectrum sp = post_measurement_spectrum(s, direction(angles));
  return -(xlog2(sp.lambda1) + xlog2(sp.lambda2) + xlog2(sp.lambda3) + xlog2(sp.lambda4));
}

double g_theta0_profile(const BlochX& s, double theta) noexcept {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double rsq = s.t1 * s.t1 * sn * sn;
  double total = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double jsgn = (j == 0) ? 1.0 : -1.0;
    const double p = 1.0 + jsgn * s.y * c;
    const double axis = s.x + jsgn * s.t3 * c;
    const double root = std::sqrt(rsq + axis * axis);
    total -= xlog2(0.25 * (p + root));
    total -= xlog2(0.25 * (p - root));
  }
  return total;
}

std::optional<double> h_theta(const BlochX& s, double theta) noexcept {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double t1sq = s.t1 * s.t1;
  const double rsq = t1sq * sn * sn;
  const double ap = s.x + s.t3 * c;
  const double am = s.x - s.t3 * c;
  const double qp = std::sqrt(rsq + ap * ap);
  const double qm = std::sqrt(rsq + am * am);
  const double pp = 1.0 + s.y * c;
  const double pm = 1.0 - s.y * c;
  if (qp < kDenFloor || qm < kDenFloor) return std::nullopt;
  const double dp = pp - qp;
  const double dm = pm - qm;
  if (dp <= kLogArgFloor || dm <= kLogArgFloor) return std::nullopt;
  // R*csc(theta)*cot(theta) reduces to t1^2*cos(theta) at phi = 0; the
  // S-terms carry the signed factors (x +- t3 cos(theta)), not |.|.
  const double np = t1sq * c - s.t3 * ap;
  const double nm = t1sq * c + s.t3 * am;
  const double ratio = ((pm + qm) * dm) / ((pp + qp) * dp);
  return np / qp * std::log2((pp + qp) / dp) + s.y * std::log2(ratio) +
         nm / qm * std::log2((pm + qm) / dm);
}

std::optional<double> h_phi(const BlochX& s, const MeasurementAngles& angles) noexcept {
  const double c = std::cos(angles.theta);
  const double sn = std::sin(angles.theta);
  const double cph = std::cos(angles.phi);
  const double sph = std::sin(angles.phi);
  const double rsq = (s.t1 * s.t1 * cph * cph + s.t2 * s.t2 * sph * sph) * sn * sn;
  const double ap = s.x + s.t3 * c;
  const double am = s.x - s.t3 * c;
  const double qp = std::sqrt(rsq + ap * ap);
  const double qm = std::sqrt(rsq + am * am);
  const double pp = 1.0 + s.y * c;
  const double pm = 1.0 - s.y * c;
  if (qp < kDenFloor || qm < kDenFloor) return std::nullopt;
  const double dp = pp - qp;
  const double dm = pm - qm;
  if (dp <= kLogArgFloor || dm <= kLogArgFloor) return std::nullopt;
  return std::log2((pp + qp) / dp) / qp + std::log2((pm + qm) / dm) / qm;
}

}  // namespace deficitx

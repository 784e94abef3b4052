#pragma once

#include <optional>

#include "deficitx/state.hpp"

namespace deficitx {

/// Projective-measurement direction on the Bloch sphere of qubit B.
/// Construction normalizes to theta in [0, pi], phi in [0, 2*pi).
struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;

  MeasurementAngles() = default;
  MeasurementAngles(double theta_in, double phi_in) noexcept;
};

struct ZVector {
  double z1 = 0.0;
  double z2 = 0.0;
  double z3 = 1.0;
};

ZVector direction(const MeasurementAngles& angles) noexcept;

/// Measurement direction induced by the unitary V = t*I + i*(y1,y2,y3).sigma.
/// Throws std::invalid_argument unless t^2 + y1^2 + y2^2 + y3^2 = 1 within 1e-10.
ZVector unitary_to_direction(double t, double y1, double y2, double y3);

/// Eigenvalues of the ensemble average after measuring along z, together
/// with the intermediates they are assembled from.
struct PostMeasurementSpectrum {
  double lambda1 = 0.25;
  double lambda2 = 0.25;
  double lambda3 = 0.25;
  double lambda4 = 0.25;
  double p_plus = 1.0;
  double p_minus = 1.0;
  double R = 0.0;
  double S_plus = 0.0;
  double S_minus = 0.0;
};

PostMeasurementSpectrum post_measurement_spectrum(const BlochX& s, const ZVector& z) noexcept;

/// Entropy (bits) of the post-measurement ensemble average, the objective
/// minimized over measurement directions.
double g_value(const BlochX& s, const MeasurementAngles& angles) noexcept;

/// G(theta, 0) through the closed two-index form; equals g_value at phi = 0.
double g_theta0_profile(const BlochX& s, double theta) noexcept;

/// Signed derivative factor with dG/dtheta = -(sin(theta)/4) * H_theta at
/// phi = 0. Returns nullopt when the spectrum is rank deficient at this
/// angle (a log argument <= 1e-14 or a denominator < 1e-12); callers fall
/// back to finite differences of g_value.
std::optional<double> h_theta(const BlochX& s, double theta) noexcept;

/// Positive factor with dG/dphi = 2*e*f*sin^2(theta)*sin(2*phi) * H_phi.
/// Same singular-evaluation contract as h_theta.
std::optional<double> h_phi(const BlochX& s, const MeasurementAngles& angles) noexcept;

}  // namespace deficitx

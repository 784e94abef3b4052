#pragma once

#include "deficitx/measurement.hpp"
#include "deficitx/state.hpp"

namespace deficitx {

struct OracleSettings {
  int theta_grid_points = 361;  // over [0, pi/2], endpoints included
  int phi_grid_points = 181;    // over [0, pi), half open
  double refine_tolerance = 1e-10;
  int refine_max_iters = 200;
};

struct OracleResult {
  double g_min = 2.0;
  MeasurementAngles argmin;
  double deficit = 0.0;
  long evaluations = 0;
  bool hit_max_iters = false;
};

/// Exhaustive g_value scan over the (theta, phi) grid. Ties resolve to the
/// smallest theta, then the smallest phi, independent of evaluation order.
OracleResult grid_minimum(const BlochX& s, const OracleSettings& settings = {});

/// Coordinate descent around a grid seed, alternating golden-section
/// searches in theta and phi until the improvement drops below
/// refine_tolerance. Never returns a value worse than the seed.
OracleResult refine_minimum(const BlochX& s, const MeasurementAngles& seed,
                            const OracleSettings& settings = {});

/// Post-measurement entropy through dense 4x4 matrices and a general
/// Hermitian eigensolver; shares no code with post_measurement_spectrum.
/// The unitary is V = t*I + i*(y1,y2,y3).sigma and must be normalized
/// within 1e-10 (throws std::invalid_argument otherwise).
double dense_post_measurement_entropy(const XMatrix& m, double t, double y1, double y2,
                                      double y3);

/// Grid scan plus refinement; deficit = g_min - S(rho_AB).
OracleResult deficit_oracle(const BlochX& s, const OracleSettings& settings = {});

}  // namespace deficitx

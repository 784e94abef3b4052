#pragma once

#include <array>
#include <cmath>
#include <random>

#include "deficitx/measurement.hpp"
#include "deficitx/state.hpp"

namespace testutil {

using deficitx::BlochX;

/// Rejection sampling over the five-cube; keeps states passing validate.
inline BlochX random_valid_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const BlochX s{u(rng), u(rng), u(rng), u(rng), u(rng)};
    if (deficitx::validate(s).valid) return s;
  }
}

inline BlochX random_canonical_state(std::mt19937& rng) {
  return deficitx::canonicalize(random_valid_state(rng)).first;
}

inline BlochX random_diagonal_state(std::mt19937& rng) {
  BlochX s = random_valid_state(rng);
  s.t1 = 0.0;
  s.t2 = 0.0;
  return s;
}

inline BlochX random_bell_diagonal(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const BlochX s{0.0, 0.0, u(rng), u(rng), u(rng)};
    if (deficitx::validate(s).valid) return s;
  }
}

/// Random point of U(2) parameterized as (t, y1, y2, y3) on the 3-sphere.
inline std::array<double, 4> random_unitary_params(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    std::array<double, 4> v{n(rng), n(rng), n(rng), n(rng)};
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (norm < 1e-3) continue;
    for (double& c : v) c /= norm;
    return v;
  }
}

/// Central difference of G along theta at fixed phi.
inline double fd_dg_dtheta(const BlochX& s, double theta, double phi, double h = 1e-5) {
  return (deficitx::g_value(s, {theta + h, phi}) - deficitx::g_value(s, {theta - h, phi})) /
         (2.0 * h);
}

/// Central difference of G along phi at fixed theta.
inline double fd_dg_dphi(const BlochX& s, double theta, double phi, double h = 1e-5) {
  return (deficitx::g_value(s, {theta, phi + h}) - deficitx::g_value(s, {theta, phi - h})) /
         (2.0 * h);
}

/// Second difference of G along phi.
inline double fd_d2g_dphi2(const BlochX& s, double theta, double phi, double h = 1e-4) {
  return (deficitx::g_value(s, {theta, phi + h}) - 2.0 * deficitx::g_value(s, {theta, phi}) +
          deficitx::g_value(s, {theta, phi - h})) /
         (h * h);
}

}  // namespace testutil

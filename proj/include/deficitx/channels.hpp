#pragma once

#include <span>
#include <vector>

#include "deficitx/deficit.hpp"
#include "deficitx/state.hpp"

namespace deficitx {

enum class DampingMode { KrausExact, PaperTransform };

std::string to_string(DampingMode mode);

/// gamma = 1 - exp(-tau * time) for a phase-damping rate tau.
double gamma_from_rate(double tau, double time);

/// Dephasing on both qubits by direct dense application of the Kraus pair
/// F0 = diag(1, sqrt(1-gamma)), F1 = diag(0, sqrt(gamma)). Diagonal entries
/// are unchanged; both coherences pick up the factor the 4x4 products
/// produce. Throws std::invalid_argument for gamma outside [0, 1].
XMatrix apply_phase_damping_kraus(const XMatrix& m, double gamma);

/// The printed transform: t1, t2 -> (1-gamma)^2 * t1, (1-gamma)^2 * t2.
BlochX paper_dephasing_transform(const BlochX& s, double gamma);

BlochX apply_damping(const BlochX& s, double gamma, DampingMode mode);

struct TrajectoryPoint {
  double gamma = 0.0;
  double deficit = 0.0;
  Branch branch = Branch::ThetaZero;
  double g_at_0 = 0.0;
  double g_at_pi2 = 0.0;
  BlochX damped;  // Bloch parameters of the damped state
};

/// Deficit of the damped state at each gamma. The gamma list must be
/// strictly increasing within [0, 1]. Points are independent; `threads > 1`
/// evaluates them in parallel with order-preserving output.
std::vector<TrajectoryPoint> deficit_trajectory(const BlochX& s, std::span<const double> gammas,
                                                DampingMode mode, int threads = 1);

/// gamma values where the branch label changes between consecutive
/// trajectory points, refined by bisection on the classifier to 1e-6.
/// Needs the generating state and mode to re-evaluate between grid points.
std::vector<double> detect_branch_transitions(const BlochX& s, DampingMode mode,
                                              std::span<const TrajectoryPoint> traj);

}  // namespace deficitx

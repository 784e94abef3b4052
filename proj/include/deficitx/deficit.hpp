#pragma once

#include <optional>
#include <string>

#include "deficitx/state.hpp"

namespace deficitx {

enum class Branch { ThetaZero, ThetaHalfPi, Interior };

std::string to_string(Branch b);

/// Criteria are "positive" above this tolerance; values in [-tol, tol]
/// route to the endpoint comparison.
inline constexpr double kCriteriaTol = 1e-10;

/// Reported instead of +-infinity when a second derivative genuinely
/// diverges (a zero diagonal entry of the dephased state).
inline constexpr double kDivergentCriterion = 1e300;

/// Negated second derivative of G(theta,0) at theta = 0, scaled by 4
/// (the H_theta -> 0 limit). Evaluated in a cancellation-safe grouped form;
/// falls back to a 5-point finite difference when the closed form is
/// indeterminate. Expects a canonical state.
double h0(const BlochX& s) noexcept;

/// Negated second derivative of G(theta,0) at theta = pi/2, scaled by
/// 4*ln(2) (the closed tanh^-1 form). Finite-difference fallback near
/// t1^2 + x^2 in {0, 1}. Expects a canonical state.
double h_pi2_prime(const BlochX& s) noexcept;

/// G(0,0): entropy of the z-dephased diagonal.
double g_at_zero(const BlochX& s) noexcept;

/// G(pi/2,0) = 1 + L((1 - sqrt(t1^2 + x^2))/2). Expects a canonical state.
double g_at_pi2(const BlochX& s) noexcept;

struct ThetaSolveResult {
  double theta_s = 0.0;
  bool fallback_used = false;  // golden-section on G instead of H_theta root
};

/// Interior critical angle from H_theta = 0 on (0, pi/2) by bracketed
/// bisection to |dtheta| <= 1e-12. Requires h0 > 0 and h_pi2_prime > 0
/// (throws std::invalid_argument otherwise). If the bracket fails to
/// straddle zero, minimizes G(theta,0) by golden section and flags it.
ThetaSolveResult solve_theta_s(const BlochX& s);

struct BranchDecision {
  Branch branch = Branch::ThetaZero;
  double h0 = 0.0;
  double h_pi2_prime = 0.0;
  std::optional<double> theta_s;  // present iff branch == Interior
  bool used_fallback = false;
};

/// Interior iff both criteria exceed kCriteriaTol; otherwise the smaller
/// endpoint wins (ties -> ThetaZero). Expects a canonical state.
BranchDecision classify_branch(const BlochX& s) noexcept;

struct DeficitResult {
  double deficit = 0.0;  // bits; g_min - entropy
  BranchDecision decision;
  double g_min = 0.0;
  double g_at_0 = 0.0;
  double g_at_pi2 = 0.0;
  double entropy = 0.0;  // S(rho_AB)
};

/// One-way quantum deficit of a valid X state. Canonicalizes internally;
/// the decision is reported in canonical coordinates. Throws
/// InvalidStateError when validation fails.
DeficitResult one_way_deficit(const BlochX& s);

}  // namespace deficitx

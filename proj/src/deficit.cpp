#include "deficitx/deficit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "deficitx/measurement.hpp"

namespace deficitx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kSmallAxis = 1e-9;  // |x +- t3| below: paired series limit
constexpr double kSmallGap = 1e-12;  // p - s below: grouped log coefficient
constexpr double kDropCoef = 1e-9;   // grouped coefficient treated as structural zero

// 5-point second derivative of G(theta,0) at a point of even symmetry
// (theta = 0 and theta = pi/2 both qualify).
double d2_profile_symmetric(const BlochX& s, double at, double h) {
  const double g0 = g_theta0_profile(s, at);
  const double g1 = g_theta0_profile(s, at + h);
  const double g2 = g_theta0_profile(s, at + 2.0 * h);
  return (-2.0 * g2 + 32.0 * g1 - 30.0 * g0) / (12.0 * h * h);
}

// Grouped, cancellation-safe evaluation of lim_{theta->0} H_theta. The raw
// sum contains log(p - s) pieces whose coefficients cancel exactly when a
// dephased diagonal entry vanishes; grouping makes that cancellation
// explicit instead of subtracting infinities. NaN means "use finite
// differences".
double h0_closed_form(const BlochX& s) {
  const double t1sq = s.t1 * s.t1;
  double acc = 0.0;
  for (int side = 0; side < 2; ++side) {
    const bool plus = (side == 0);
    const double axis = plus ? s.x + s.t3 : s.x - s.t3;
    const double sv = std::abs(axis);
    const double p = plus ? 1.0 + s.y : 1.0 - s.y;
    const double n = plus ? t1sq - s.t3 * axis : t1sq + s.t3 * axis;
    const double ysgn = plus ? -1.0 : 1.0;
    if (sv < kSmallAxis) {
      if (p < kSmallGap) return std::numeric_limits<double>::quiet_NaN();
      acc += 2.0 * n / (p * kLn2) + ysgn * s.y * 2.0 * std::log2(p);
      continue;
    }
    const double coef = n / sv;
    acc += (coef + ysgn * s.y) * std::log2(p + sv);
    const double gap = p - sv;
    const double gap_coef = -(coef - ysgn * s.y);
    if (gap < kSmallGap) {
      if (std::abs(gap_coef) <= kDropCoef) continue;  // finite limit, term -> 0
      return gap_coef > 0.0 ? -kDivergentCriterion : kDivergentCriterion;
    }
    acc += gap_coef * std::log2(gap);
  }
  return acc;
}

struct GoldenResult {
  double arg = 0.0;
  double value = 0.0;
};

template <typename F>
GoldenResult golden_minimize(F&& f, double lo, double hi, double arg_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > arg_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

// H_theta with the documented singular fallback: near zero the continuous
// limit is h0, elsewhere a central difference of the profile stands in.
double h_theta_robust(const BlochX& s, double theta, double h0_value) {
  if (auto v = h_theta(s, theta)) return *v;
  if (theta < 1e-3) return h0_value;
  const double h = 1e-6;
  const double dg =
      (g_theta0_profile(s, theta + h) - g_theta0_profile(s, theta - h)) / (2.0 * h);
  return -4.0 * dg / std::sin(theta);
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::ThetaZero: return "ThetaZero";
    case Branch::ThetaHalfPi: return "ThetaHalfPi";
    case Branch::Interior: return "Interior";
  }
  return "?";
}

double h0(const BlochX& s) noexcept {
  const double closed = h0_closed_form(s);
  if (!std::isnan(closed)) return closed;
  return -4.0 * d2_profile_symmetric(s, 0.0, 1e-3);
}

double h_pi2_prime(const BlochX& s) noexcept {
  const double ksq = s.t1 * s.t1 + s.x * s.x;
  if (ksq < 1e-12 || ksq > 1.0 - 1e-12) {
    return -4.0 * kLn2 * d2_profile_symmetric(s, kHalfPi, 1e-3);
  }
  const double k = std::sqrt(ksq);
  const double num =
      (s.t3 * s.t3 * s.x * s.x + (s.y * s.y - 2.0 * s.t3 * s.x * s.y) * ksq) * k +
      s.t1 * s.t1 * (ksq - 1.0) * (s.t1 * s.t1 - s.t3 * s.t3 + s.x * s.x) * std::atanh(k);
  return -4.0 * num / ((ksq - 1.0) * ksq * k);
}

double g_at_zero(const BlochX& s) noexcept {
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double ksgn = (k == 0) ? 1.0 : -1.0;
    for (int j = 0; j < 2; ++j) {
      const double jsgn = (j == 0) ? 1.0 : -1.0;
      total -= xlog2(0.25 * ((1.0 + ksgn * s.x) + jsgn * (s.y + ksgn * s.t3)));
    }
  }
  return total;
}

double g_at_pi2(const BlochX& s) noexcept {
  const double k = std::sqrt(s.t1 * s.t1 + s.x * s.x);
  double w = 0.5 * (1.0 - k);
  if (w < 0.0) w = 0.0;  // k may exceed 1 by rounding for pure states
  return 1.0 + binary_entropy(w);
}

ThetaSolveResult solve_theta_s(const BlochX& s) {
  const double crit0 = h0(s);
  const double critp = h_pi2_prime(s);
  if (!(crit0 > kCriteriaTol && critp > kCriteriaTol)) {
    throw std::invalid_argument("solve_theta_s: requires h0 > 0 and h_pi2_prime > 0");
  }
  const double eps = 1e-8;
  double lo = eps, hi = kHalfPi - eps;
  double flo = h_theta_robust(s, lo, crit0);
  double fhi = h_theta_robust(s, hi, crit0);
  if (!(flo > 0.0 && fhi < 0.0)) {
    // single-zero assumption violated (or endpoint noise): minimize directly
    const GoldenResult g = golden_minimize(
        [&](double th) { return g_theta0_profile(s, th); }, 0.0, kHalfPi, 1e-12);
    return {g.arg, true};
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h_theta_robust(s, mid, crit0);
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false};
}

namespace {

BranchDecision classify_by_scan(const BlochX& s, double crit0, double critp) {
  // 1001-point scan of G(theta,0) plus golden refinement; used whenever the
  // analytic criteria cannot be trusted.
  BranchDecision dec;
  dec.h0 = crit0;
  dec.h_pi2_prime = critp;
  dec.used_fallback = true;
  const int n = 1001;
  int best = 0;
  double best_val = g_theta0_profile(s, 0.0);
  for (int i = 1; i < n; ++i) {
    const double th = kHalfPi * i / (n - 1);
    const double v = g_theta0_profile(s, th);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == n - 1) {
    const double g0 = g_at_zero(s);
    const double gp = g_at_pi2(s);
    dec.branch = (g0 <= gp) ? Branch::ThetaZero : Branch::ThetaHalfPi;
    return dec;
  }
  const double width = kHalfPi / (n - 1);
  const GoldenResult g =
      golden_minimize([&](double th) { return g_theta0_profile(s, th); },
                      (best - 1) * width, (best + 1) * width, 1e-12);
  dec.branch = Branch::Interior;
  dec.theta_s = g.arg;
  return dec;
}

}  // namespace

BranchDecision classify_branch(const BlochX& s) noexcept {
  const double crit0 = h0(s);
  const double critp = h_pi2_prime(s);
  if (std::isnan(crit0) || std::isnan(critp)) return classify_by_scan(s, crit0, critp);
  BranchDecision dec;
  dec.h0 = crit0;
  dec.h_pi2_prime = critp;
  if (crit0 > kCriteriaTol && critp > kCriteriaTol) {
    const ThetaSolveResult sol = solve_theta_s(s);
    dec.used_fallback = sol.fallback_used;
    if (sol.theta_s > 1e-7 && sol.theta_s < kHalfPi - 1e-7) {
      dec.branch = Branch::Interior;
      dec.theta_s = sol.theta_s;
      return dec;
    }
    // degenerate window right at a boundary: the endpoint value is exact
  }
  const double g0 = g_at_zero(s);
  const double gp = g_at_pi2(s);
  dec.branch = (g0 <= gp) ? Branch::ThetaZero : Branch::ThetaHalfPi;
  return dec;
}

DeficitResult one_way_deficit(const BlochX& s) {
  ValidationReport rep = validate(s);
  if (!rep.valid) throw InvalidStateError(std::move(rep));
  const BlochX cs = canonicalize(s).first;
  DeficitResult out;
  out.decision = classify_branch(cs);
  out.g_at_0 = g_at_zero(cs);
  out.g_at_pi2 = g_at_pi2(cs);
  switch (out.decision.branch) {
    case Branch::Interior:
      out.g_min = g_theta0_profile(cs, *out.decision.theta_s);
      break;
    case Branch::ThetaZero:
      out.g_min = out.g_at_0;
      break;
    case Branch::ThetaHalfPi:
      out.g_min = out.g_at_pi2;
      break;
  }
  out.entropy = von_neumann_entropy(entropy_spectrum(cs));
  out.deficit = out.g_min - out.entropy;
  return out;
}

}  // namespace deficitx

#include "deficitx/families.hpp"

#include <cmath>
#include <stdexcept>

#include "deficitx/measurement.hpp"

namespace deficitx {

namespace {

void check_unit_interval(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

double entropy_of(const BlochX& s) { return von_neumann_entropy(entropy_spectrum(s)); }

}  // namespace

BlochX example1(double q) {
  check_unit_interval("example1: q", q);
  return {1.0 - q, 1.0 - q, -q, -q, 1.0 - 2.0 * q};
}

std::pair<double, Branch> example1_closed_deficit(double q) {
  check_unit_interval("example1: q", q);
  if (q <= 0.5) return {q, Branch::ThetaZero};
  const BlochX cs = canonicalize(example1(q)).first;
  if (h0(cs) > kCriteriaTol && h_pi2_prime(cs) > kCriteriaTol) {
    const ThetaSolveResult sol = solve_theta_s(cs);
    return {g_theta0_profile(cs, sol.theta_s) - entropy_of(cs), Branch::Interior};
  }
  const double k = std::sqrt(q * q + (1.0 - q) * (1.0 - q));
  const double value = xlog2(q) + xlog2(1.0 - q) + 1.0 + binary_entropy(0.5 * (1.0 + k));
  return {value, Branch::ThetaHalfPi};
}

BlochX example2(double alpha) {
  check_unit_interval("example2: alpha", alpha);
  return {0.0, 0.0, alpha, -alpha, 2.0 * alpha - 1.0};
}

std::pair<double, Branch> example2_closed_deficit(double alpha) {
  check_unit_interval("example2: alpha", alpha);
  if (alpha <= 1.0 / 3.0) return {alpha, Branch::ThetaZero};
  const double value = 1.0 + alpha + xlog2(alpha) +
                       0.5 * (xlog2(1.0 - alpha) - (1.0 + alpha) * std::log2(1.0 + alpha));
  return {value, Branch::ThetaHalfPi};
}

BlochX bell_diagonal(double t1, double t2, double t3) {
  const BlochX s{0.0, 0.0, t1, t2, t3};
  ValidationReport rep = validate(s);
  if (!rep.valid) throw InvalidStateError(std::move(rep));
  return s;
}

double bell_diagonal_g_min(double t1, double t2, double t3) {
  const BlochX cs = canonicalize(bell_diagonal(t1, t2, t3)).first;
  const double t = std::max(std::abs(cs.t1), std::abs(cs.t3));
  return 1.0 + binary_entropy(0.5 * (1.0 + t));
}

BlochX werner(double p) { return bell_diagonal(-p, -p, -p); }

std::optional<FamilyPoint> make_family_point(const std::string& name,
                                             std::span<const double> params) {
  const auto require = [&](std::size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("family '" + name + "' takes " + std::to_string(n) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  FamilyPoint pt;
  pt.family = name;
  pt.parameters.assign(params.begin(), params.end());
  if (name == "example1") {
    require(1);
    pt.state = example1(params[0]);
    const auto [value, branch] = example1_closed_deficit(params[0]);
    pt.closed_form_deficit = value;
    pt.closed_form_branch = branch;
    return pt;
  }
  if (name == "example2") {
    require(1);
    pt.state = example2(params[0]);
    const auto [value, branch] = example2_closed_deficit(params[0]);
    pt.closed_form_deficit = value;
    pt.closed_form_branch = branch;
    return pt;
  }
  if (name == "werner") {
    require(1);
    pt.state = werner(params[0]);
    pt.closed_form_deficit =
        bell_diagonal_g_min(-params[0], -params[0], -params[0]) - entropy_of(pt.state);
    return pt;
  }
  if (name == "bell-diagonal") {
    require(3);
    pt.state = bell_diagonal(params[0], params[1], params[2]);
    pt.closed_form_deficit =
        bell_diagonal_g_min(params[0], params[1], params[2]) - entropy_of(pt.state);
    return pt;
  }
  return std::nullopt;
}

}  // namespace deficitx

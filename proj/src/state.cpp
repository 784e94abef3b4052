#include "deficitx/state.hpp"

#include <cmath>
#include <sstream>

namespace deficitx {

double xlog2(double x) noexcept {
  if (x <= 0.0) return 0.0;
  return x * std::log2(x);
}

std::string ValidationReport::summary() const {
  if (valid) return "valid";
  std::ostringstream os;
  os << "invalid:";
  for (const auto& v : violations) {
    os << " " << v.constraint << " (" << v.measured << " vs " << v.bound << ")";
  }
  return os.str();
}

InvalidStateError::InvalidStateError(ValidationReport report)
    : std::invalid_argument(report.summary()), report_(std::move(report)) {}

XMatrix to_matrix(const BlochX& s) noexcept {
  XMatrix m;
  m.a = 0.25 * (1.0 + s.t3 + s.x + s.y);
  m.b = 0.25 * (1.0 - s.t3 + s.x - s.y);
  m.c = 0.25 * (1.0 - s.t3 - s.x + s.y);
  m.d = 0.25 * (1.0 + s.t3 - s.x - s.y);
  m.e = 0.25 * (s.t1 + s.t2);
  m.f = 0.25 * (s.t1 - s.t2);
  return m;
}

BlochX from_matrix(const XMatrix& m) noexcept {
  BlochX s;
  s.x = m.a + m.b - m.c - m.d;
  s.y = m.a - m.b + m.c - m.d;
  s.t3 = m.a - m.b - m.c + m.d;
  s.t1 = 2.0 * (m.e + m.f);
  s.t2 = 2.0 * (m.e - m.f);
  return s;
}

ValidationReport validate(const XMatrix& m, double tol) {
  if (tol < 0.0) throw std::invalid_argument("validate: tol must be >= 0");
  ValidationReport rep;
  auto check_nonneg = [&](const char* name, double value) {
    if (value < -tol) rep.violations.push_back({std::string(name) + ">=0", value, 0.0});
  };
  check_nonneg("a", m.a);
  check_nonneg("b", m.b);
  check_nonneg("c", m.c);
  check_nonneg("d", m.d);
  const double trace = m.a + m.b + m.c + m.d;
  if (std::abs(trace - 1.0) > tol) rep.violations.push_back({"trace", trace, 1.0});
  if (m.e * m.e > m.b * m.c + tol) rep.violations.push_back({"e2<=bc", m.e * m.e, m.b * m.c});
  if (m.f * m.f > m.a * m.d + tol) rep.violations.push_back({"f2<=ad", m.f * m.f, m.a * m.d});
  rep.valid = rep.violations.empty();
  return rep;
}

ValidationReport validate(const BlochX& s, double tol) { return validate(to_matrix(s), tol); }

std::pair<BlochX, TransformLog> canonicalize(const BlochX& s) noexcept {
  BlochX r = s;
  TransformLog log;
  if (std::abs(r.t1) < std::abs(r.t2)) {
    std::swap(r.t1, r.t2);
    log.swapped = true;
  }
  if (r.t1 < 0.0) {
    r.t1 = -r.t1;
    r.t2 = -r.t2;
    log.flipped = true;
  }
  return {r, log};
}

EntropySpectrum entropy_spectrum(const BlochX& s) noexcept {
  const double ru = std::sqrt((s.x + s.y) * (s.x + s.y) + (s.t1 - s.t2) * (s.t1 - s.t2));
  const double rv = std::sqrt((s.x - s.y) * (s.x - s.y) + (s.t1 + s.t2) * (s.t1 + s.t2));
  EntropySpectrum sp;
  sp.u_plus = 0.25 * (1.0 + s.t3 + ru);
  sp.u_minus = 0.25 * (1.0 + s.t3 - ru);
  sp.v_plus = 0.25 * (1.0 - s.t3 + rv);
  sp.v_minus = 0.25 * (1.0 - s.t3 - rv);
  return sp;
}

namespace {

double entropy_term(double lambda) {
  if (lambda < -1e-12) throw std::domain_error("von_neumann_entropy: eigenvalue below -1e-12");
  return -xlog2(lambda);  // [-1e-12, 0] contributes 0
}

}  // namespace

double von_neumann_entropy(const EntropySpectrum& sp) {
  return entropy_term(sp.u_plus) + entropy_term(sp.u_minus) + entropy_term(sp.v_plus) +
         entropy_term(sp.v_minus);
}

double binary_entropy(double w) {
  if (w < -1e-12 || w > 1.0 + 1e-12) throw std::domain_error("binary_entropy: w outside [0, 1]");
  if (w <= 0.0 || w >= 1.0) return 0.0;
  return -xlog2(w) - xlog2(1.0 - w);
}

}  // namespace deficitx

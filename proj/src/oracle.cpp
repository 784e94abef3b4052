#include "deficitx/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "deficitx/dense.hpp"

namespace deficitx {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

void check_settings(const OracleSettings& st) {
  if (st.theta_grid_points < 3 || st.phi_grid_points < 3) {
    throw std::invalid_argument("oracle: grid points must be >= 3");
  }
  if (!(st.refine_tolerance > 0.0)) {
    throw std::invalid_argument("oracle: refine_tolerance must be > 0");
  }
  if (st.refine_max_iters < 1) {
    throw std::invalid_argument("oracle: refine_max_iters must be >= 1");
  }
}

double entropy_of(const BlochX& s) { return von_neumann_entropy(entropy_spectrum(s)); }

// g_value inlined over precomputed theta terms; the grid loop is the hot path.
struct ThetaRow {
  double sin2 = 0.0;   // sin^2(theta)
  double pp = 1.0;     // 1 + y cos
  double pm = 1.0;     // 1 - y cos
  double sp = 0.0;     // (x + t3 cos)^2
  double sm = 0.0;     // (x - t3 cos)^2
};

double g_row(const BlochX& s, const ThetaRow& row, double phi) {
  const double cph = std::cos(phi);
  const double sph = std::sin(phi);
  const double r = (s.t1 * s.t1 * cph * cph + s.t2 * s.t2 * sph * sph) * row.sin2;
  const double qp = std::sqrt(r + row.sp);
  const double qm = std::sqrt(r + row.sm);
  return -(xlog2(0.25 * (row.pp + qp)) + xlog2(0.25 * (row.pp - qp)) +
           xlog2(0.25 * (row.pm + qm)) + xlog2(0.25 * (row.pm - qm)));
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

}  // namespace

OracleResult grid_minimum(const BlochX& s, const OracleSettings& settings) {
  check_settings(settings);
  const int nth = settings.theta_grid_points;
  const int nph = settings.phi_grid_points;
  const double dth = kHalfPi / (nth - 1);
  const double dph = kPi / nph;
  OracleResult out;
  double best = std::numeric_limits<double>::infinity();
  double best_th = 0.0, best_ph = 0.0;
  for (int i = 0; i < nth; ++i) {
    const double th = i * dth;
    const double c = std::cos(th);
    const double sn = std::sin(th);
    ThetaRow row;
    row.sin2 = sn * sn;
    row.pp = 1.0 + s.y * c;
    row.pm = 1.0 - s.y * c;
    const double ap = s.x + s.t3 * c;
    const double am = s.x - s.t3 * c;
    row.sp = ap * ap;
    row.sm = am * am;
    for (int j = 0; j < nph; ++j) {
      const double v = g_row(s, row, j * dph);
      if (v < best) {  // strict: ties keep the smallest theta, then phi
        best = v;
        best_th = th;
        best_ph = j * dph;
      }
    }
  }
  out.g_min = best;
  out.argmin = MeasurementAngles(best_th, best_ph);
  out.evaluations = static_cast<long>(nth) * nph;
  out.deficit = best - entropy_of(s);
  return out;
}

OracleResult refine_minimum(const BlochX& s, const MeasurementAngles& seed,
                            const OracleSettings& settings) {
  check_settings(settings);
  long evals = 0;
  const auto g = [&](double th, double ph) {
    ++evals;
    return g_value(s, MeasurementAngles(th, ph));
  };
  const double dth = kHalfPi / (settings.theta_grid_points - 1);
  const double dph = kPi / settings.phi_grid_points;
  double th = seed.theta;
  double ph = seed.phi;
  double best = g(th, ph);
  const double seed_value = best;
  bool hit_max = true;
  for (int iter = 0; iter < settings.refine_max_iters; ++iter) {
    const double prev = best;
    const GoldenResult gt =
        golden_minimize([&](double t) { return g(t, ph); }, std::max(0.0, th - 2.0 * dth),
                        std::min(kHalfPi, th + 2.0 * dth), 1e-12);
    if (gt.value < best) {
      best = gt.value;
      th = gt.arg;
    }
    const GoldenResult gp =
        golden_minimize([&](double p) { return g(th, p); }, std::max(0.0, ph - 2.0 * dph),
                        std::min(kPi, ph + 2.0 * dph), 1e-12);
    if (gp.value < best) {
      best = gp.value;
      ph = gp.arg;
    }
    if (prev - best < settings.refine_tolerance) {
      hit_max = false;
      break;
    }
  }
  OracleResult out;
  if (best <= seed_value) {
    out.g_min = best;
    out.argmin = MeasurementAngles(th, ph);
  } else {
    out.g_min = seed_value;
    out.argmin = seed;
  }
  out.evaluations = evals;
  out.hit_max_iters = hit_max;
  out.deficit = out.g_min - entropy_of(s);
  return out;
}

double dense_post_measurement_entropy(const XMatrix& m, double t, double y1, double y2,
                                      double y3) {
  const double norm2 = t * t + y1 * y1 + y2 * y2 + y3 * y3;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("dense_post_measurement_entropy: unitary not normalized");
  }
  using Cx = std::complex<double>;
  const Cx i(0.0, 1.0);
  Eigen::Matrix2cd v;
  v << Cx(t, 0) + i * y3, i * (y1 - i * y2), i * (y1 + i * y2), Cx(t, 0) - i * y3;
  const Eigen::Matrix4cd rho = to_dense_matrix(m).cast<Cx>();
  Eigen::Matrix4cd accumulated = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 2; ++k) {
    Eigen::Matrix2cd proj = Eigen::Matrix2cd::Zero();
    proj(k, k) = 1.0;
    const Eigen::Matrix2cd mk = v * proj * v.adjoint();
    Eigen::Matrix4cd big = Eigen::Matrix4cd::Zero();  // I (x) M_k
    big.block<2, 2>(0, 0) = mk;
    big.block<2, 2>(2, 2) = mk;
    accumulated += big * rho * big.adjoint();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(accumulated,
                                                               Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) total -= xlog2(solver.eigenvalues()(k));
  return total;
}

OracleResult deficit_oracle(const BlochX& s, const OracleSettings& settings) {
  const OracleResult coarse = grid_minimum(s, settings);
  OracleResult fine = refine_minimum(s, coarse.argmin, settings);
  fine.evaluations += coarse.evaluations;
  return fine;
}

}  // namespace deficitx

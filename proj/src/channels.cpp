#include "deficitx/channels.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "deficitx/dense.hpp"
#include "deficitx/parallel.hpp"

namespace deficitx {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("phase damping: gamma must lie in [0, 1]");
  }
}

}  // namespace

std::string to_string(DampingMode mode) {
  return mode == DampingMode::KrausExact ? "kraus-exact" : "paper-transform";
}

double gamma_from_rate(double tau, double time) {
  if (tau < 0.0 || time < 0.0) {
    throw std::invalid_argument("gamma_from_rate: tau and time must be >= 0");
  }
  return 1.0 - std::exp(-tau * time);
}

XMatrix apply_phase_damping_kraus(const XMatrix& m, double gamma) {
  check_gamma(gamma);
  Eigen::Matrix2d f0 = Eigen::Matrix2d::Zero();
  f0(0, 0) = 1.0;
  f0(1, 1) = std::sqrt(1.0 - gamma);
  Eigen::Matrix2d f1 = Eigen::Matrix2d::Zero();
  f1(1, 1) = std::sqrt(gamma);
  const Eigen::Matrix2d kraus[2] = {f0, f1};
  const Eigen::Matrix4d rho = to_dense_matrix(m);
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Eigen::Matrix4d big = Eigen::Matrix4d::Zero();  // F_i (x) F_j
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          big.block<2, 2>(2 * r, 2 * c) = kraus[i](r, c) * kraus[j];
        }
      }
      out += big * rho * big.transpose();
    }
  }
  return from_dense_matrix(out);
}

BlochX paper_dephasing_transform(const BlochX& s, double gamma) {
  check_gamma(gamma);
  const double shrink = (1.0 - gamma) * (1.0 - gamma);
  return {s.x, s.y, shrink * s.t1, shrink * s.t2, s.t3};
}

BlochX apply_damping(const BlochX& s, double gamma, DampingMode mode) {
  if (mode == DampingMode::PaperTransform) return paper_dephasing_transform(s, gamma);
  return from_matrix(apply_phase_damping_kraus(to_matrix(s), gamma));
}

std::vector<TrajectoryPoint> deficit_trajectory(const BlochX& s, std::span<const double> gammas,
                                                DampingMode mode, int threads) {
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    check_gamma(gammas[i]);
    if (i > 0 && !(gammas[i] > gammas[i - 1])) {
      throw std::invalid_argument("deficit_trajectory: gammas must be strictly increasing");
    }
  }
  std::vector<TrajectoryPoint> traj(gammas.size());
  parallel_for_index(gammas.size(), threads, [&](std::size_t i) {
    const BlochX damped = apply_damping(s, gammas[i], mode);
    const DeficitResult r = one_way_deficit(damped);
    traj[i] = {gammas[i], r.deficit, r.decision.branch, r.g_at_0, r.g_at_pi2, damped};
  });
  return traj;
}

std::vector<double> detect_branch_transitions(const BlochX& s, DampingMode mode,
                                              std::span<const TrajectoryPoint> traj) {
  const auto branch_at = [&](double gamma) {
    return one_way_deficit(apply_damping(s, gamma, mode)).decision.branch;
  };
  std::vector<double> transitions;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    if (traj[i].branch == traj[i + 1].branch) continue;
    double lo = traj[i].gamma;
    double hi = traj[i + 1].gamma;
    const Branch left = traj[i].branch;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      if (branch_at(mid) == left) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    transitions.push_back(0.5 * (lo + hi));
  }
  return transitions;
}

}  // namespace deficitx

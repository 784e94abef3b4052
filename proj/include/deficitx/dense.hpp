#pragma once

#include <Eigen/Dense>

#include "deficitx/state.hpp"

namespace deficitx {

/// Dense 4x4 density matrix in the computational basis {00, 01, 10, 11}.
inline Eigen::Matrix4d to_dense_matrix(const XMatrix& m) noexcept {
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  rho(0, 0) = m.a;
  rho(1, 1) = m.b;
  rho(2, 2) = m.c;
  rho(3, 3) = m.d;
  rho(1, 2) = rho(2, 1) = m.e;
  rho(0, 3) = rho(3, 0) = m.f;
  return rho;
}

/// Reads the X entries back; off-pattern entries are the caller's concern.
inline XMatrix from_dense_matrix(const Eigen::Matrix4d& rho) noexcept {
  XMatrix m;
  m.a = rho(0, 0);
  m.b = rho(1, 1);
  m.c = rho(2, 2);
  m.d = rho(3, 3);
  m.e = rho(1, 2);
  m.f = rho(0, 3);
  return m;
}

}  // namespace deficitx

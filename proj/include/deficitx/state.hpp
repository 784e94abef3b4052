#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deficitx {

/// Two-qubit X state in Bloch form: local z-components x, y and the
/// diagonal correlation tensor (t1, t2, t3). All five parameters are
/// dimensionless reals in [-1, 1] for physical states.
struct BlochX {
  double x = 0.0;
  double y = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

/// Density-matrix entries of an X state: diagonal (a, b, c, d) and the
/// two anti-diagonal coherences e (inner block) and f (outer block).
/// Physical states satisfy a,b,c,d >= 0, a+b+c+d = 1, e^2 <= bc, f^2 <= ad.
struct XMatrix {
  double a = 0.25;
  double b = 0.25;
  double c = 0.25;
  double d = 0.25;
  double e = 0.0;
  double f = 0.0;
};

/// Eigenvalues of the unmeasured two-qubit state, split into the two
/// 2x2 blocks of the X structure.
struct EntropySpectrum {
  double u_plus = 0.25;
  double u_minus = 0.25;
  double v_plus = 0.25;
  double v_minus = 0.25;
};

struct Violation {
  std::string constraint;  // "a>=0", "trace", "e2<=bc", "f2<=ad", ...
  double measured = 0.0;
  double bound = 0.0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;

  std::string summary() const;
};

/// Thrown by operations that require a physical state when validation fails.
class InvalidStateError : public std::invalid_argument {
 public:
  explicit InvalidStateError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

inline constexpr double kDefaultValidationTol = 1e-9;

/// x*log2(x) with the convention 0*log2(0) = 0 (also used for x <= 0).
double xlog2(double x) noexcept;

XMatrix to_matrix(const BlochX& s) noexcept;
BlochX from_matrix(const XMatrix& m) noexcept;

ValidationReport validate(const XMatrix& m, double tol = kDefaultValidationTol);
ValidationReport validate(const BlochX& s, double tol = kDefaultValidationTol);

/// Which local-unitary rewrites canonicalize applied.
struct TransformLog {
  bool swapped = false;  // (t1, t2) -> (t2, t1), simultaneous z-rotations
  bool flipped = false;  // (t1, t2) -> (-t1, -t2), sigma_z on one qubit
};

/// Locally-unitarily-equivalent state with |t1| >= |t2| and t1 >= 0.
/// After this rewrite both coherences e, f of the matrix form are >= 0.
std::pair<BlochX, TransformLog> canonicalize(const BlochX& s) noexcept;

EntropySpectrum entropy_spectrum(const BlochX& s) noexcept;

/// Von Neumann entropy in bits. Eigenvalues in [-1e-12, 0) are clamped to 0;
/// anything below -1e-12 throws std::domain_error.
double von_neumann_entropy(const EntropySpectrum& sp);

/// Binary entropy L(w) in bits; w may stray 1e-12 outside [0, 1] (clamped),
/// anything further throws std::domain_error.
double binary_entropy(double w);

}  // namespace deficitx

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deficitx/deficit.hpp"
#include "deficitx/state.hpp"

namespace deficitx {

/// q |psi-><psi-| + (1-q) |00><00|  ->  (1-q, 1-q, -q, -q, 1-2q).
BlochX example1(double q);

/// Reference deficit for example1: q on [0, 1/2]; the numerically solved
/// interior branch while both criteria stay positive; the closed pi/2 form
/// after that.
std::pair<double, Branch> example1_closed_deficit(double q);

/// alpha |phi+><phi+| + (1-alpha)/2 (|01><01| + |10><10|)  ->  (0, 0, alpha, -alpha, 2alpha-1).
BlochX example2(double alpha);

/// Piecewise closed form: alpha on [0, 1/3]; the pi/2 expression above it.
std::pair<double, Branch> example2_closed_deficit(double alpha);

/// (0, 0, t1, t2, t3); throws InvalidStateError outside the tetrahedron.
BlochX bell_diagonal(double t1, double t2, double t3);

/// Minimal post-measurement entropy 1 + L((1+t)/2), t = max{|t1|,|t3|}
/// after canonicalization (= max{|t1|,|t2|,|t3|} of the inputs).
double bell_diagonal_g_min(double t1, double t2, double t3);

/// Werner convenience: bell_diagonal(-p, -p, -p).
BlochX werner(double p);

struct FamilyPoint {
  std::string family;
  std::vector<double> parameters;
  BlochX state;
  std::optional<double> closed_form_deficit;
  std::optional<Branch> closed_form_branch;
};

/// Families addressable by name: "example1" (q), "example2" (alpha),
/// "werner" (p), "bell-diagonal" (t1, t2, t3). Returns nullopt for an
/// unknown name; throws on a wrong parameter count or range.
std::optional<FamilyPoint> make_family_point(const std::string& name,
                                             std::span<const double> params);

}  // namespace deficitx

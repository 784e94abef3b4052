#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "deficitx/deficit.hpp"
#include "deficitx/families.hpp"
#include "deficitx/measurement.hpp"
#include "helpers.hpp"

using namespace deficitx;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

BlochX canonical(const BlochX& s) { return canonicalize(s).first; }

double entropy_of(const BlochX& s) { return von_neumann_entropy(entropy_spectrum(s)); }

// Independent 5-point estimate of -4 * d2G/dtheta2 at theta = 0 (G is even).
double fd_h0(const BlochX& s, double h = 1e-3) {
  const double g0 = g_theta0_profile(s, 0.0);
  const double g1 = g_theta0_profile(s, h);
  const double g2 = g_theta0_profile(s, 2.0 * h);
  return -4.0 * (-2.0 * g2 + 32.0 * g1 - 30.0 * g0) / (12.0 * h * h);
}

// Same at pi/2, carrying the extra ln(2) the closed form uses.
double fd_hpi2(const BlochX& s, double h = 1e-3) {
  const double g0 = g_theta0_profile(s, kHalfPi);
  const double g1 = g_theta0_profile(s, kHalfPi + h);
  const double g2 = g_theta0_profile(s, kHalfPi + 2.0 * h);
  return -4.0 * std::numbers::ln2 * (-2.0 * g2 + 32.0 * g1 - 30.0 * g0) / (12.0 * h * h);
}

}  // namespace

TEST_CASE("h0: reference points") {
  CHECK(std::abs(h0(canonical(example2(1.0 / 3.0)))) <= 1e-10);
  CHECK(std::abs(h0(canonical(example1(0.5)))) <= 1e-10);
  // limit of the Example-2 closed form as t3 -> 0
  CHECK(h0(canonical(example2(0.5))) ==
        doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("h0 matches finite differences on random canonical states") {
  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) {
    const BlochX s = testutil::random_canonical_state(rng);
    const double analytic = h0(s);
    if (std::abs(analytic) >= kDivergentCriterion) continue;  // FD cannot track a divergence
    CHECK(std::abs(analytic - fd_h0(s)) <= 5e-5 + 1e-5 * std::abs(analytic));
  }
}

TEST_CASE("h_pi2_prime: reference points") {
  CHECK(std::abs(h_pi2_prime(canonical(example2(1.0 / 3.0)))) <= 1e-10);
  CHECK(h_pi2_prime(canonical(example2(0.5))) ==
        doctest::Approx(-1.0986122886681098).epsilon(1e-12));
  // Bell diagonal with t1 = t3: the (t1^2 - t3^2) factor kills it
  CHECK(std::abs(h_pi2_prime(canonical(bell_diagonal(0.6, 0.2, 0.6)))) <= 1e-10);
}

TEST_CASE("h_pi2_prime matches finite differences on random canonical states") {
  std::mt19937 rng(32);
  for (int i = 0; i < 200; ++i) {
    const BlochX s = testutil::random_canonical_state(rng);
    const double ksq = s.t1 * s.t1 + s.x * s.x;
    if (ksq > 0.98) continue;  // near the log singularity FD is the implementation itself
    const double analytic = h_pi2_prime(s);
    CHECK(std::abs(analytic - fd_hpi2(s)) <= 5e-5 + 1e-5 * std::abs(analytic));
  }
}

TEST_CASE("g_at_zero: reference points") {
  CHECK(g_at_zero({0, 0, 0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
  // diagonal state: the z measurement leaves the state unchanged
  std::mt19937 rng(33);
  for (int i = 0; i < 100; ++i) {
    const BlochX s = testutil::random_diagonal_state(rng);
    CHECK(g_at_zero(s) == doctest::Approx(entropy_of(s)).epsilon(1e-12));
  }
  const BlochX bd = bell_diagonal(0.2, 0.1, 0.7);
  CHECK(g_at_zero(bd) == doctest::Approx(1.0 + binary_entropy(0.5 * (1.0 + 0.7))).epsilon(1e-13));
}

TEST_CASE("g_at_pi2: reference points") {
  CHECK(g_at_pi2({0, 0, 0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
  const BlochX bd = canonical(bell_diagonal(0.2, 0.5, 0.1));
  CHECK(g_at_pi2(bd) == doctest::Approx(1.0 + binary_entropy(0.5 * (1.0 + 0.5))).epsilon(1e-13));
  const BlochX fig3{0.45, 0.32, 0.43, 0.09, 0.15};
  const double root = std::sqrt(0.43 * 0.43 + 0.45 * 0.45);
  CHECK(g_at_pi2(canonical(fig3)) ==
        doctest::Approx(1.0 + binary_entropy(0.5 * (1.0 - root))).epsilon(1e-13));
}

TEST_CASE("solve_theta_s: interior point of example1") {
  const BlochX s = canonical(example1(0.6));
  const ThetaSolveResult sol = solve_theta_s(s);
  CHECK(sol.theta_s > 0.0);
  CHECK(sol.theta_s < kHalfPi);
  CHECK_FALSE(sol.fallback_used);
  const double interior = g_theta0_profile(s, sol.theta_s);
  CHECK(interior < g_at_zero(s));
  CHECK(interior < g_at_pi2(s));
  // the root really is a zero of H_theta
  const auto h = h_theta(s, sol.theta_s);
  REQUIRE(h.has_value());
  CHECK(std::abs(*h) <= 1e-8);
}

TEST_CASE("solve_theta_s rejects states without an interior window") {
  CHECK_THROWS_AS(solve_theta_s(canonical(bell_diagonal(0.5, 0.1, 0.3))), std::invalid_argument);
}

TEST_CASE("classify_branch: examples") {
  CHECK(classify_branch(canonical(example2(0.2))).branch == Branch::ThetaZero);
  CHECK(classify_branch(canonical(example2(0.8))).branch == Branch::ThetaHalfPi);
  const BranchDecision interior = classify_branch(canonical(example1(0.6)));
  CHECK(interior.branch == Branch::Interior);
  REQUIRE(interior.theta_s.has_value());
  CHECK(*interior.theta_s > 0.0);
  CHECK(*interior.theta_s < kHalfPi);
}

TEST_CASE("one_way_deficit: reference points") {
  CHECK(one_way_deficit(example1(0.3)).deficit == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(one_way_deficit(example2(1.0)).deficit == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(one_way_deficit({0, 0, 0, 0, 0}).deficit) <= 1e-14);
}

TEST_CASE("one_way_deficit rejects invalid states") {
  CHECK_THROWS_AS(one_way_deficit({1.5, 0, 0, 0, 0}), InvalidStateError);
}

TEST_CASE("deficit invariants over random states") {
  std::mt19937 rng(34);
  for (int i = 0; i < 300; ++i) {
    const BlochX s = testutil::random_valid_state(rng);
    const DeficitResult r = one_way_deficit(s);
    CHECK(r.deficit >= -1e-9);
    CHECK(r.deficit == doctest::Approx(r.g_min - r.entropy).epsilon(1e-12));
  }
}

TEST_CASE("diagonal states have zero deficit") {
  std::mt19937 rng(35);
  for (int i = 0; i < 300; ++i) {
    const BlochX s = testutil::random_diagonal_state(rng);
    CHECK(std::abs(one_way_deficit(s).deficit) <= 1e-12);
  }
}

TEST_CASE("deficit is invariant under the canonicalizing unitaries") {
  std::mt19937 rng(36);
  for (int i = 0; i < 100; ++i) {
    const BlochX s = testutil::random_valid_state(rng);
    const double base = one_way_deficit(s).deficit;
    const BlochX swapped{s.x, s.y, s.t2, s.t1, s.t3};
    const BlochX flipped{s.x, s.y, -s.t1, -s.t2, s.t3};
    const BlochX both{s.x, s.y, -s.t2, -s.t1, s.t3};
    CHECK(std::abs(one_way_deficit(swapped).deficit - base) <= 1e-9);
    CHECK(std::abs(one_way_deficit(flipped).deficit - base) <= 1e-9);
    CHECK(std::abs(one_way_deficit(both).deficit - base) <= 1e-9);
  }
}

TEST_CASE("analytic result is the lower envelope of the theta profile") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> uth(0.0, kHalfPi);
  for (int i = 0; i < 100; ++i) {
    const BlochX s = testutil::random_canonical_state(rng);
    const DeficitResult r = one_way_deficit(s);
    for (int k = 0; k < 50; ++k) {
      CHECK(r.g_min <= g_theta0_profile(s, uth(rng)) + 1e-12);
    }
  }
}

TEST_CASE("branch continuity at the example boundaries") {
  // example2 at alpha = 1/3: both endpoint branches give the same deficit
  const BlochX a = canonical(example2(1.0 / 3.0));
  const double s_a = entropy_of(a);
  CHECK(std::abs((g_at_zero(a) - s_a) - (g_at_pi2(a) - s_a)) <= 1e-9);
  // example1 at q = 1/2: the theta = 0 value matches the interior limit
  const BlochX b = canonical(example1(0.5));
  double best = g_at_zero(b);
  for (int i = 1; i <= 2000; ++i) {
    best = std::min(best, g_theta0_profile(b, kHalfPi * i / 2000));
  }
  CHECK(std::abs((g_at_zero(b) - entropy_of(b)) - (best - entropy_of(b))) <= 1e-9);
  CHECK(one_way_deficit(example1(0.5)).deficit == doctest::Approx(0.5).epsilon(1e-9));
}

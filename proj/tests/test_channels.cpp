#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "deficitx/channels.hpp"
#include "deficitx/oracle.hpp"
#include "helpers.hpp"

using namespace deficitx;

TEST_CASE("gamma_from_rate") {
  CHECK(gamma_from_rate(0.0, 5.0) == 0.0);
  CHECK(gamma_from_rate(2.0, 1.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_from_rate(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("kraus channel: endpoints and the measured factor") {
  const XMatrix m = to_matrix({0.45, 0.32, 0.43, 0.09, 0.15});

  const XMatrix same = apply_phase_damping_kraus(m, 0.0);
  CHECK(same.a == doctest::Approx(m.a).epsilon(1e-15));
  CHECK(same.e == doctest::Approx(m.e).epsilon(1e-15));
  CHECK(same.f == doctest::Approx(m.f).epsilon(1e-15));

  const XMatrix dead = apply_phase_damping_kraus(m, 1.0);
  CHECK(dead.e == 0.0);
  CHECK(dead.f == 0.0);
  CHECK(dead.a == doctest::Approx(m.a).epsilon(1e-15));

  // direct 4x4 application scales both coherences by exactly 1 - gamma
  const XMatrix half = apply_phase_damping_kraus(m, 0.5);
  CHECK(half.e == doctest::Approx(0.5 * m.e).epsilon(1e-14));
  CHECK(half.f == doctest::Approx(0.5 * m.f).epsilon(1e-14));
  CHECK(half.a == doctest::Approx(m.a).epsilon(1e-15));
  CHECK(half.b == doctest::Approx(m.b).epsilon(1e-15));
  CHECK(half.c == doctest::Approx(m.c).epsilon(1e-15));
  CHECK(half.d == doctest::Approx(m.d).epsilon(1e-15));

  CHECK_THROWS_AS(apply_phase_damping_kraus(m, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(apply_phase_damping_kraus(m, 1.1), std::invalid_argument);
}

TEST_CASE("channel preserves trace, positivity and the X form") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> ug(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const BlochX s = testutil::random_valid_state(rng);
    const XMatrix out = apply_phase_damping_kraus(to_matrix(s), ug(rng));
    CHECK(validate(out).valid);
  }
}

TEST_CASE("paper transform") {
  const BlochX s{0.45, 0.32, 0.43, 0.09, 0.15};
  const BlochX same = paper_dephasing_transform(s, 0.0);
  CHECK(same.t1 == s.t1);
  CHECK(same.t2 == s.t2);
  const BlochX dead = paper_dephasing_transform(s, 1.0);
  CHECK(dead.t1 == 0.0);
  CHECK(dead.t2 == 0.0);
  CHECK(dead.t3 == s.t3);
  const BlochX half = paper_dephasing_transform(s, 0.5);
  CHECK(half.t1 == doctest::Approx(0.1075).epsilon(1e-15));
  CHECK_THROWS_AS(paper_dephasing_transform(s, 2.0), std::invalid_argument);
}

TEST_CASE("trajectory endpoints") {
  const BlochX s{0.45, 0.32, 0.43, 0.09, 0.15};
  const std::vector<double> gammas{0.0, 0.5, 1.0};
  for (const DampingMode mode : {DampingMode::KrausExact, DampingMode::PaperTransform}) {
    const auto traj = deficit_trajectory(s, gammas, mode);
    REQUIRE(traj.size() == 3);
    CHECK(traj[0].deficit == one_way_deficit(s).deficit);  // same code path, exact
    CHECK(std::abs(traj[2].deficit) <= 1e-12);             // diagonal endpoint
  }
  CHECK_THROWS_AS(deficit_trajectory(s, std::vector<double>{0.5, 0.5}, DampingMode::KrausExact),
                  std::invalid_argument);
}

TEST_CASE("trajectory points match the oracle (paper mode)") {
  const BlochX s{0.45, 0.32, 0.43, 0.09, 0.15};
  std::vector<double> gammas;
  for (int i = 0; i <= 20; ++i) gammas.push_back(i / 20.0);
  const auto traj = deficit_trajectory(s, gammas, DampingMode::PaperTransform);
  for (const auto& p : traj) {
    CHECK(std::abs(p.deficit - deficit_oracle(p.damped).deficit) <= 1e-4);
  }
}

TEST_CASE("branch transition location for a Bell-diagonal state") {
  // under exact Kraus damping |t1| shrinks by (1 - gamma); with t1 = 0.8 and
  // t3 = 0.3 the endpoint branches swap where (1 - gamma) * 0.8 = 0.3
  const BlochX s = bell_diagonal(0.8, 0.1, 0.3);
  std::vector<double> gammas;
  for (int i = 0; i <= 40; ++i) gammas.push_back(i / 40.0);
  const auto traj = deficit_trajectory(s, gammas, DampingMode::KrausExact);
  const auto transitions = detect_branch_transitions(s, DampingMode::KrausExact, traj);
  REQUIRE(transitions.size() == 1);
  CHECK(std::abs(transitions[0] - 0.625) <= 1e-6);
}

TEST_CASE("constant-branch trajectory reports no transitions") {
  const BlochX s = bell_diagonal(0.2, 0.1, 0.6);  // ThetaZero throughout
  std::vector<double> gammas;
  for (int i = 0; i <= 10; ++i) gammas.push_back(i / 10.0);
  const auto traj = deficit_trajectory(s, gammas, DampingMode::KrausExact);
  CHECK(detect_branch_transitions(s, DampingMode::KrausExact, traj).empty());
}

TEST_CASE("value stays smooth between transitions") {
  const BlochX s{0.45, 0.32, 0.43, 0.09, 0.15};
  std::vector<double> gammas;
  const int n = 200;
  for (int i = 0; i <= n; ++i) gammas.push_back(static_cast<double>(i) / n);
  const auto traj = deficit_trajectory(s, gammas, DampingMode::PaperTransform);
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double second_diff =
        traj[i + 1].deficit - 2.0 * traj[i].deficit + traj[i - 1].deficit;
    CHECK(std::abs(second_diff) <= 5e-3);  // kinks in branch, no jumps in value
  }
}

TEST_CASE("parallel trajectory equals serial") {
  const BlochX s{0.45, 0.32, 0.43, 0.09, 0.15};
  std::vector<double> gammas;
  for (int i = 0; i <= 50; ++i) gammas.push_back(i / 50.0);
  const auto serial = deficit_trajectory(s, gammas, DampingMode::PaperTransform, 1);
  const auto parallel = deficit_trajectory(s, gammas, DampingMode::PaperTransform, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].deficit == parallel[i].deficit);
    CHECK(serial[i].branch == parallel[i].branch);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellforge/analytic.hpp"
#include "bellforge/rng.hpp"

using namespace bellforge;

TEST_CASE("ghz angles: formula values, signs, and limits") {
  // Frozen from the angle formulas: alpha0 = arctan(tan^{-3/5}(pi/8)).
  const auto [alpha0, alpha1] = ghz_angles(3, kPi / 8);
  CHECK(alpha0 == doctest::Approx(1.038283490556978).epsilon(1e-12));
  CHECK(alpha1 == doctest::Approx(-0.873082590761937).epsilon(1e-12));

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const double theta = 0.02 + rng.uniform() * (kPi / 4 - 0.04);
    const auto [a0, a1] = ghz_angles(n, theta);
    CHECK(a1 < 0.0);
    CHECK(a0 > 0.0);
    CHECK(a0 > kPi / 4);  // tan(theta) < 1 makes the arctan argument exceed 1
  }

  // Near the maximally entangled point both angles approach pi/4 in size.
  const auto [near0, near1] = ghz_angles(3, kPi / 4 - 1e-7);
  CHECK(near0 == doctest::Approx(kPi / 4).epsilon(1e-5));
  CHECK(-near1 == doctest::Approx(kPi / 4).epsilon(1e-5));

  CHECK_THROWS_AS(ghz_angles(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ghz_angles(3, kPi / 4), std::invalid_argument);
  CHECK_THROWS_AS(ghz_angles(2, 0.3), std::invalid_argument);
}

TEST_CASE("ghz closed form reproduces frozen oracle values") {
  const GhzClosedForm n3 = ghz_closed_form(3, kPi / 8);
  CHECK(n3.value == doctest::Approx(3.065790170723887e-02).epsilon(1e-12));
  CHECK(n3.p_single_flip < 1e-30);
  CHECK(n3.p_double_setting < 1e-30);

  const GhzClosedForm n4 = ghz_closed_form(4, kPi / 6);
  CHECK(n4.value == doctest::Approx(5.665015646440559e-03).epsilon(1e-12));
}

TEST_CASE("ghz violation: simulator matches the closed form") {
  const GhzCertificate cert3 = ghz_violation(3, kPi / 8);
  CHECK(cert3.value_sim > 0.0);
  CHECK(cert3.value_sim == doctest::Approx(cert3.value_closed).epsilon(1e-12));
  CHECK(std::abs(cert3.value_sim - 3.065790170723887e-02) < 1e-10);
  CHECK(cert3.residual_single_flip < 1e-10);
  CHECK(cert3.residual_double_setting < 1e-10);

  const GhzCertificate cert4 = ghz_violation(4, kPi / 6);
  CHECK(cert4.value_sim > 0.0);
  CHECK(std::abs(cert4.value_sim - cert4.value_closed) < 1e-10);

  CHECK_THROWS_AS(ghz_violation(3, kPi / 4), std::invalid_argument);
}

TEST_CASE("hardy measurements satisfy the paradox conditions") {
  const HardyCertificate cert = hardy_measurements(kPi / 6, kPi / 3, 0.0);
  // P(00|00) = 3/40 for these parameters, worked out by hand.
  CHECK(cert.p_00_00 == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(cert.p_01_01 < 1e-12);
  CHECK(cert.p_10_10 < 1e-12);
  CHECK(cert.p_00_11 < 1e-12);

  // Nonzero phase keeps the construction valid.
  const HardyCertificate phased = hardy_measurements(kPi / 12, kPi / 6, kPi / 2);
  CHECK(phased.p_00_00 > 1e-6);
  CHECK(phased.p_01_01 < 1e-12);
  CHECK(phased.p_10_10 < 1e-12);
  CHECK(phased.p_00_11 < 1e-12);
}

TEST_CASE("hardy forbidden lines are rejected") {
  CHECK_THROWS_AS(hardy_measurements(kPi / 6, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_measurements(kPi / 6, kPi / 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_measurements(kPi / 4, kPi / 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_measurements(0.0, kPi / 3, 0.0), std::invalid_argument);
}

TEST_CASE("hardy paradox probability vanishes as sin(2a) sin(4t)") {
  // Approaching a forbidden line the paradox probability must fade.
  const double near_zero = hardy_measurements(kPi / 6, 1e-4, 0.0, 1e-6).p_00_00;
  const double generic = hardy_measurements(kPi / 6, kPi / 4, 0.0).p_00_00;
  CHECK(near_zero < 1e-6);
  CHECK(generic > 1e-3);
}

TEST_CASE("symmetric-state construction on the worked example") {
  AcinParams params;
  params.h0 = 0.6;
  params.h1 = 0.0;
  params.h2 = 0.4;
  params.h3 = 0.4;
  params.h4 = std::sqrt(0.32);
  params.phi = 0.0;
  const SymmetricStateCertificate cert = symmetric_state_violation(params);
  CHECK(cert.value > 0.0);
  CHECK(cert.value == doctest::Approx(cert.p_root).epsilon(1e-9));
  CHECK(cert.zero_residuals[0] < 1e-10);
  CHECK(cert.zero_residuals[1] < 1e-10);
  CHECK(cert.zero_residuals[2] < 1e-10);
  CHECK(cert.schmidt_theta > 0.0);
  CHECK(cert.schmidt_theta < kPi / 4);
}

TEST_CASE("symmetric-state construction keeps the A2 <-> A3 symmetry") {
  AcinParams params;
  params.h0 = 0.55;
  params.h1 = 0.2;
  params.h2 = 0.35;
  params.h3 = 0.35;
  params.h4 = std::sqrt(1.0 - 0.55 * 0.55 - 0.04 - 2 * 0.35 * 0.35);
  params.phi = 0.9;
  const SymmetricStateCertificate cert = symmetric_state_violation(params);
  const PureState state = acin_state(params.h0, params.h1, params.h2, params.h3, params.h4, params.phi);
  const Behavior behavior = behavior_from_state(state, cert.assignment);
  const BellFunctional pair01 = lift(chsh_variant().functional, 3);
  BellFunctional pair02(3);  // CHSH on parties 0 and 2, party 1 pinned
  pair02.add_term(0b000, 0b000, 1);
  pair02.add_term(0b001, 0b001, -1);
  pair02.add_term(0b100, 0b100, -1);
  pair02.add_term(0b101, 0b000, -1);
  CHECK(pair01.evaluate(behavior) == doctest::Approx(pair02.evaluate(behavior)).epsilon(1e-10));
  CHECK(cert.value > 0.0);
}

TEST_CASE("symmetric-state construction preconditions") {
  AcinParams ghz_like;
  ghz_like.h0 = std::cos(0.5);
  ghz_like.h4 = std::sin(0.5);
  CHECK_THROWS_AS(symmetric_state_violation(ghz_like), std::invalid_argument);  // h2 = 0

  AcinParams asymmetric;
  asymmetric.h0 = 0.6;
  asymmetric.h2 = 0.3;
  asymmetric.h3 = 0.4;
  asymmetric.h4 = std::sqrt(1 - 0.36 - 0.09 - 0.16);
  CHECK_THROWS_AS(symmetric_state_violation(asymmetric), std::invalid_argument);  // h2 != h3
}

TEST_CASE("symmetric-state construction on random symmetric states") {
  Rng rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    double h0 = 0.05 + rng.uniform();
    double h1 = rng.uniform() * 0.5;
    double h2 = 0.05 + rng.uniform();
    double h4 = 0.05 + rng.uniform();
    const double norm = std::sqrt(h0 * h0 + h1 * h1 + 2 * h2 * h2 + h4 * h4);
    AcinParams params;
    params.h0 = h0 / norm;
    params.h1 = h1 / norm;
    params.h2 = h2 / norm;
    params.h3 = params.h2;
    params.h4 = h4 / norm;
    params.phi = rng.uniform() * kPi;
    const SymmetricStateCertificate cert = symmetric_state_violation(params);
    CHECK(cert.value > 1e-6);
    CHECK(cert.zero_residuals[0] < 1e-10);
    CHECK(cert.zero_residuals[1] < 1e-10);
    CHECK(cert.zero_residuals[2] < 1e-10);
  }
}

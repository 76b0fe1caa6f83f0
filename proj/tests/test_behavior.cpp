#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellforge/behavior.hpp"
#include "bellforge/ns_boxes.hpp"
#include "bellforge/strategy.hpp"

using namespace bellforge;

TEST_CASE("uniform behavior has exactly zero residuals") {
  for (int n = 1; n <= 4; ++n) {
    const RationalBehavior uniform = RationalBehavior::uniform(n);
    const auto report = check_behavior(uniform);
    CHECK(report.normalization_residual == Rational(0));
    CHECK(report.no_signalling_residual == Rational(0));
    CHECK(report.min_entry == Rational(1, std::int64_t{1} << n));
  }
}

TEST_CASE("PR box is no-signalling with exactly zero residuals") {
  const auto report = check_behavior(pr_box<Rational>());
  CHECK(report.normalization_residual == Rational(0));
  CHECK(report.no_signalling_residual == Rational(0));
  CHECK(report.min_entry == Rational(0));
}

TEST_CASE("a perturbed entry is flagged at the right scale") {
  Behavior behavior = to_double_behavior(RationalBehavior::uniform(2));
  behavior.at(0, 0) += 1e-3;
  const auto report = check_behavior(behavior);
  CHECK(report.normalization_residual == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK(report.within(1e-2));
  CHECK_FALSE(report.within(1e-6));
}

TEST_CASE("signalling tables are caught") {
  // Party 0's outcome distribution leaks party 1's setting.
  std::vector<double> table(16, 0.0);
  auto set = [&](std::size_t x, std::size_t a, double p) { table[x * 4 + a] = p; };
  set(0b00, 0b00, 1.0);
  set(0b01, 0b10, 1.0);  // party 0 flips its outcome when party 1 changes setting
  set(0b10, 0b00, 1.0);
  set(0b11, 0b10, 1.0);
  const auto report = check_behavior(Behavior(2, table));
  CHECK(report.normalization_residual == 0.0);
  CHECK(report.no_signalling_residual == doctest::Approx(1.0));
}

TEST_CASE("incomplete tables are a structural error") {
  CHECK_THROWS_AS(Behavior(2, std::vector<double>(15, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Behavior(0, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Behavior(11, std::vector<double>(std::size_t{1} << 22, 0.0)), std::invalid_argument);
}

TEST_CASE("party cap is configurable") {
  std::vector<double> table(16, 0.0);
  CHECK_THROWS_AS(Behavior(2, table, 1), std::invalid_argument);
}

TEST_CASE("uniform equals the equal mixture of all deterministic strategies") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::pair<Rational, RationalBehavior>> weighted;
    const Rational weight(1, static_cast<std::int64_t>(deterministic_count(n)));
    for (const DeterministicStrategy& strategy : enumerate_deterministic(n)) {
      weighted.emplace_back(weight, strategy.to_behavior<Rational>());
    }
    CHECK(mix_behaviors(weighted) == RationalBehavior::uniform(n));
  }
}

TEST_CASE("single-party marginals of the PR box are uniform") {
  const RationalBehavior box = pr_box<Rational>();
  for (int party = 0; party < 2; ++party) {
    for (std::size_t x = 0; x < 4; ++x) {
      CHECK(box.single_party_marginal(party, x, 0) == Rational(1, 2));
      CHECK(box.single_party_marginal(party, x, 1) == Rational(1, 2));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bellforge/grouping.hpp"
#include "bellforge/ns_boxes.hpp"
#include "bellforge/rng.hpp"
#include "bellforge/strategy.hpp"

using namespace bellforge;

TEST_CASE("enumeration yields exactly 4^n distinct strategies") {
  CHECK(enumerate_deterministic(1).size() == 4);
  CHECK(enumerate_deterministic(2).size() == 16);
  CHECK(enumerate_deterministic(4).size() == 256);
  std::set<std::uint64_t> indices;
  for (const DeterministicStrategy& s : enumerate_deterministic(3)) {
    indices.insert(s.index());
    CHECK(DeterministicStrategy::from_index(3, s.index()) == s);
  }
  CHECK(indices.size() == 64);
}

TEST_CASE("every strategy induces a valid one-hot behavior") {
  for (const DeterministicStrategy& s : enumerate_deterministic(2)) {
    const RationalBehavior behavior = s.to_behavior<Rational>();
    const auto report = check_behavior(behavior);
    CHECK(report.normalization_residual == Rational(0));
    CHECK(report.no_signalling_residual == Rational(0));
    for (std::size_t x = 0; x < 4; ++x) {
      CHECK(behavior.at(x, s.response(x)) == Rational(1));
    }
  }
}

TEST_CASE("all-ones strategy outputs one everywhere") {
  const DeterministicStrategy ones = DeterministicStrategy::all_ones(3);
  const RationalBehavior behavior = ones.to_behavior<Rational>();
  for (std::size_t x = 0; x < 8; ++x) {
    CHECK(behavior.at(x, 0b111) == Rational(1));
  }
  const auto report = check_behavior(DeterministicStrategy::all_ones(5).to_behavior<Rational>());
  CHECK(report.normalization_residual == Rational(0));
  CHECK(report.no_signalling_residual == Rational(0));
}

TEST_CASE("grouping validation") {
  CHECK_NOTHROW(Grouping(4, {{0, 1}, {2}, {3}}));
  CHECK(Grouping(4, {{2}, {0, 1}, {3}}).groups().front() == std::vector<int>{0, 1});
  CHECK_THROWS_AS(Grouping(4, {{0, 1}, {1, 2}, {3}}), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Grouping(4, {{0, 1}, {}, {2, 3}}), std::invalid_argument);   // empty group
  CHECK_THROWS_AS(Grouping(4, {{0, 1}, {2}}), std::invalid_argument);          // misses party 3
  CHECK_THROWS_AS(Grouping(3, {{0, 1}, {2, 3}}), std::invalid_argument);       // out of range
}

TEST_CASE("product of PR box and a deterministic singleton is a valid hybrid point") {
  const RationalBehavior box = pr_box<Rational>();
  const RationalBehavior one = DeterministicStrategy::all_ones(1).to_behavior<Rational>();
  const RationalBehavior product = product_behavior<Rational>(3, {{box, {0, 1}}, {one, {2}}});
  const auto report = check_behavior(product);
  CHECK(report.normalization_residual == Rational(0));
  CHECK(report.no_signalling_residual == Rational(0));
  // P(111|xy0) = 1/2 iff the PR condition holds for (x, y).
  CHECK(product.at(0b000, 0b111) == Rational(1, 2));
  CHECK(product.at(0b110, 0b111) == Rational(0));
  CHECK(product.at(0b110, 0b011) == Rational(1, 2));
}

TEST_CASE("product of two PR boxes on a 2+2 grouping is exactly no-signalling") {
  const RationalBehavior box = pr_box<Rational>();
  const RationalBehavior product = product_behavior<Rational>(4, {{box, {0, 1}}, {box, {2, 3}}});
  const auto report = check_behavior(product);
  CHECK(report.normalization_residual == Rational(0));
  CHECK(report.no_signalling_residual == Rational(0));
}

TEST_CASE("product is independent of part order and associative under merges") {
  const RationalBehavior box = pr_box<Rational>();
  const RationalBehavior u1 = RationalBehavior::uniform(1);
  SplitMix64 gen(7);
  const RationalBehavior det =
      DeterministicStrategy::from_index(1, gen.next() % 4).to_behavior<Rational>();

  const RationalBehavior forward = product_behavior<Rational>(4, {{box, {0, 2}}, {u1, {1}}, {det, {3}}});
  const RationalBehavior shuffled = product_behavior<Rational>(4, {{det, {3}}, {box, {0, 2}}, {u1, {1}}});
  CHECK(forward == shuffled);

  // Merging the single-party groups first gives the same joint table.
  const RationalBehavior pair = product_behavior<Rational>(2, {{u1, {0}}, {det, {1}}});
  const RationalBehavior merged = product_behavior<Rational>(4, {{box, {0, 2}}, {pair, {1, 3}}});
  CHECK(forward == merged);
}

TEST_CASE("product of single-party uniforms is the uniform joint") {
  const RationalBehavior u1 = RationalBehavior::uniform(1);
  const RationalBehavior product = product_behavior<Rational>(3, {{u1, {0}}, {u1, {1}}, {u1, {2}}});
  CHECK(product == RationalBehavior::uniform(3));
}

TEST_CASE("overlapping or incomplete index sets are rejected") {
  const RationalBehavior box = pr_box<Rational>();
  const RationalBehavior u1 = RationalBehavior::uniform(1);
  CHECK_THROWS_AS(product_behavior<Rational>(3, {{box, {0, 1}}, {u1, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(product_behavior<Rational>(3, {{box, {0, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(product_behavior<Rational>(3, {{box, {1, 0}}, {u1, {2}}}), std::invalid_argument);
}

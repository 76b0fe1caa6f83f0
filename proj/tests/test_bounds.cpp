#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <vector>

#include "bellforge/bounds.hpp"
#include "bellforge/families.hpp"

using namespace bellforge;

namespace {

// All set partitions of {0..n-1} into exactly m non-empty blocks.
void partitions_into(int n, int m, std::vector<std::vector<int>>& current, int next,
                     const std::function<void(const Grouping&)>& visit) {
  if (next == n) {
    if (static_cast<int>(current.size()) == m) visit(Grouping(n, current));
    return;
  }
  for (std::size_t i = 0; i < current.size(); ++i) {
    current[i].push_back(next);
    partitions_into(n, m, current, next + 1, visit);
    current[i].pop_back();
  }
  if (static_cast<int>(current.size()) < m) {
    current.push_back({next});
    partitions_into(n, m, current, next + 1, visit);
    current.pop_back();
  }
}

}  // namespace

TEST_CASE("local bounds of the seeds are exactly zero with valid witnesses") {
  for (const Seed& seed : {chsh_variant(), tilted_chsh(Rational(1, 2)), tripartite_seed()}) {
    const BoundCertificate cert = local_bound(seed.functional);
    CHECK(cert.value == Rational(0));
    REQUIRE(cert.witness_strategy.has_value());
    CHECK(seed.functional.evaluate_strategy(*cert.witness_strategy) == cert.value);
    REQUIRE(cert.witness_rational.has_value());
    CHECK(seed.functional.evaluate(*cert.witness_rational) == cert.value);
  }
}

TEST_CASE("local bound of the lifted CHSH stays zero at n = 4") {
  const BellFunctional lifted = lift(chsh_variant().functional, 4);
  CHECK(local_bound(lifted).value == Rational(0));
}

TEST_CASE("local bound of the symmetric family is zero and all-ones attains it") {
  const BellFunctional sym4 = build_symmetric(chsh_variant(), 4);
  const BoundCertificate cert = local_bound(sym4);
  CHECK(cert.value == Rational(0));
  CHECK(sym4.evaluate_strategy(DeterministicStrategy::all_ones(4)) == Rational(0));
}

TEST_CASE("local bound respects the party cap") {
  CHECK_THROWS_AS(local_bound(build_symmetric(chsh_variant(), 4), 3), std::invalid_argument);
}

TEST_CASE("a functional with positive local value is reported faithfully") {
  BellFunctional f(2);
  f.add_term(std::size_t{0}, std::size_t{0}, Rational(3, 7));
  const BoundCertificate cert = local_bound(f);
  CHECK(cert.value == Rational(3, 7));
  CHECK(f.evaluate_strategy(*cert.witness_strategy) == Rational(3, 7));
}

TEST_CASE("tripartite biseparable bounds vanish for the genuine-nonlocality witnesses") {
  const std::vector<BellFunctional> functionals = {
      build_symmetric(chsh_variant(), 3),
      build_centered(chsh_variant(), 3, {0}),
      build_mu_family(1, 1, 1),
      build_mu_family(Rational(9, 10), Rational(4, 5), Rational(7, 10)),
      tripartite_seed().functional,
  };
  for (const BellFunctional& f : functionals) {
    const BoundCertificate cert = biseparable_bound_tripartite(f);
    CHECK(cert.value == Rational(0));
    REQUIRE(cert.witness_rational.has_value());
    CHECK(f.evaluate(*cert.witness_rational) == cert.value);
    // Hybrid and local bounds coincide for these families.
    CHECK(local_bound(f).value == cert.value);
  }
}

TEST_CASE("biseparable certification sees genuinely nonlocal-vs-hybrid gaps") {
  // The bare lifted CHSH is violated by a PR box shared between parties 0,1:
  // its biseparable bound is 1/2, not 0.
  const BellFunctional lifted = lift(chsh_variant().functional, 3);
  const BoundCertificate cert = biseparable_bound_tripartite(lifted);
  CHECK(cert.value == Rational(1, 2));
  CHECK(lifted.evaluate(*cert.witness_rational) == Rational(1, 2));
  CHECK_THROWS_AS(biseparable_bound_tripartite(chsh_variant().functional), std::invalid_argument);
}

TEST_CASE("seed certification dispatches on the seed's party count") {
  CHECK(certify_seed(chsh_variant()).value == Rational(0));
  CHECK(certify_seed(tilted_chsh(Rational(1))).value == Rational(0));
  const BoundCertificate tri = certify_seed(tripartite_seed());
  CHECK(tri.kind == BoundKind::BiseparableTripartite);
  CHECK(tri.value == Rational(0));
}

TEST_CASE("intra-group pair counting") {
  CHECK(count_potentially_positive_pairs(Grouping(5, {{0, 1}, {2, 3, 4}})) == 4);
  CHECK(count_potentially_positive_pairs(Grouping(5, {{0}, {1, 2, 3, 4}})) == 6);
  CHECK(count_potentially_positive_pairs(Grouping(5, {{0, 1, 2, 3, 4}})) == 10);
}

TEST_CASE("the best m-grouping is one big group plus singletons") {
  for (int n = 4; n <= 6; ++n) {
    for (int m = 2; m < n; ++m) {
      std::int64_t best = 0;
      std::vector<std::vector<int>> scratch;
      partitions_into(n, m, scratch, 0, [&](const Grouping& grouping) {
        best = std::max(best, count_potentially_positive_pairs(grouping));
      });
      CHECK(best == choose(n + 1 - m, 2));
      std::vector<std::vector<int>> star;
      star.push_back({});
      for (int p = 0; p < n - m + 1; ++p) star.front().push_back(p);
      for (int p = n - m + 1; p < n; ++p) star.push_back({p});
      CHECK(count_potentially_positive_pairs(Grouping(n, star)) == best);
    }
  }
}

TEST_CASE("sampled grouped bound: saturating point present, deterministic, never above zero") {
  const BellFunctional sym3 = build_symmetric(chsh_variant(), 3);
  const BoundCertificate first = grouped_bound_sampled(sym3, 2, 500, 99);
  const BoundCertificate second = grouped_bound_sampled(sym3, 2, 500, 99);
  CHECK(first.value_float == 0.0);  // the all-ones product is sample 0 and exact
  CHECK(first.value_float == second.value_float);
  CHECK(first.witness_note == second.witness_note);
  REQUIRE(first.witness_double.has_value());
  CHECK(sym3.evaluate(*first.witness_double) == doctest::Approx(first.value_float).epsilon(1e-12));
  CHECK(first.value_float <= 1e-9);

  const BellFunctional msep = build_m_separable(chsh_variant(), 5, 3, MSeparableVariant::Symmetric);
  const BoundCertificate cert = grouped_bound_sampled(msep, 3, 400, 7);
  CHECK(cert.value_float <= 1e-9);
  CHECK(cert.sample_count == 400);

  const BellFunctional sym4 = build_symmetric(chsh_variant(), 4);
  CHECK(grouped_bound_sampled(sym4, 2, 2000, 11).value_float <= 1e-9);
}

TEST_CASE("sampled bound rejects invalid group counts") {
  const BellFunctional sym4 = build_symmetric(chsh_variant(), 4);
  CHECK_THROWS_AS(grouped_bound_sampled(sym4, 1, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(grouped_bound_sampled(sym4, 4, 10, 0), std::invalid_argument);
}

TEST_CASE("sampled candidates are genuinely m-separable behaviors") {
  // Spot check: every sampled behavior must pass the structural checks.
  const BellFunctional sym4 = build_symmetric(chsh_variant(), 4);
  const BoundCertificate cert = grouped_bound_sampled(sym4, 2, 50, 5);
  CHECK(check_behavior(*cert.witness_double).within(1e-9));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellforge/io.hpp"

using namespace bellforge;

TEST_CASE("rational behaviors round-trip exactly through JSON") {
  const RationalBehavior box = ns_box<Rational>(3);
  const Json json = behavior_to_json(box);
  const LoadedBehavior loaded = behavior_from_json(json);
  REQUIRE(std::holds_alternative<RationalBehavior>(loaded));
  CHECK(std::get<RationalBehavior>(loaded) == box);
  // Probabilities are serialized as fraction strings.
  CHECK(json.at("entries").at(0).at("p").is_string());
}

TEST_CASE("double behaviors round-trip through JSON") {
  const Behavior behavior =
      behavior_from_state(haar_random_state(2, 3),
                          MeasurementAssignment::identical(2, QubitMeasurement{0.3, 0.1},
                                                           QubitMeasurement{1.1, 2.0}));
  const LoadedBehavior loaded = behavior_from_json(behavior_to_json(behavior));
  REQUIRE(std::holds_alternative<Behavior>(loaded));
  const Behavior& round = std::get<Behavior>(loaded);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(round.at(x, a) == behavior.at(x, a));
    }
  }
}

TEST_CASE("behavior JSON validates completeness and duplicates") {
  Json json = behavior_to_json(pr_box<Rational>());
  Json truncated = json;
  truncated["entries"].erase(0);
  CHECK_THROWS_AS(behavior_from_json(truncated), std::invalid_argument);
  Json duplicated = json;
  duplicated["entries"].push_back(duplicated["entries"].back());
  CHECK_THROWS_AS(behavior_from_json(duplicated), std::invalid_argument);
}

TEST_CASE("functionals round-trip with exact coefficients and meta") {
  const BellFunctional original = build_mu_family(Rational(9, 10), Rational(4, 5), Rational(7, 10));
  const Json json = functional_to_json(original);
  const BellFunctional loaded = functional_from_json(json);
  CHECK(loaded.same_terms(original));
  CHECK(loaded.bound() == original.bound());
  CHECK(loaded.meta().family == "mu");
  CHECK(loaded.meta().get("mu12") == "9/10");
  for (const Json& term : json.at("terms")) {
    CHECK(term.at("c").is_string());
  }
}

TEST_CASE("states and assignments round-trip") {
  const PureState state = haar_random_state(3, 9);
  const PureState loaded_state = state_from_json(state_to_json(state));
  CHECK(loaded_state.amplitudes() == state.amplitudes());

  MeasurementAssignment assignment = MeasurementAssignment::identical(
      2, QubitMeasurement{0.25, 1.5}, QubitMeasurement{2.0, 0.75});
  assignment.at(1, 0).alpha = 0.9;
  const MeasurementAssignment loaded = assignment_from_json(assignment_to_json(assignment));
  for (int p = 0; p < 2; ++p) {
    for (int s = 0; s < 2; ++s) {
      CHECK(loaded.at(p, s).alpha == assignment.at(p, s).alpha);
      CHECK(loaded.at(p, s).delta == assignment.at(p, s).delta);
    }
  }
}

TEST_CASE("strategies round-trip as per-party response tables") {
  const DeterministicStrategy strategy = DeterministicStrategy::from_index(3, 46);
  CHECK(strategy_from_json(strategy_to_json(strategy)) == strategy);
}

TEST_CASE("certificates serialize their kind, value and witness") {
  const BoundCertificate cert = local_bound(build_symmetric(chsh_variant(), 3));
  const Json json = certificate_to_json(cert);
  CHECK(json.at("kind") == "local");
  CHECK(json.at("value") == "0");
  CHECK(json.contains("witness_strategy"));
}

TEST_CASE("csv writers use fixed headers and dot decimals") {
  std::vector<GhzCertificate> rows(1);
  rows[0].theta = 0.5;
  rows[0].value_sim = 0.25;
  rows[0].value_closed = 0.25;
  const std::string csv = ghz_scan_csv(rows);
  CHECK(csv.rfind("theta,alpha0,alpha1,value_sim,value_closed,residual\n", 0) == 0);
  CHECK(csv.find("0.5,") != std::string::npos);
  CHECK(csv.find(',') != std::string::npos);

  ScanSummary summary;
  summary.entries.push_back({0, 0.125, 2});
  const std::string scan = scan_csv(summary);
  CHECK(scan.rfind("state_index,best_value,restarts_to_first_violation\n", 0) == 0);
  CHECK(scan.find("0,0.125,2") != std::string::npos);
}

TEST_CASE("file helpers report missing and malformed inputs") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/path.json"), std::runtime_error);
  const std::string path = "/tmp/bellforge_io_test.json";
  write_text_file(path, "{not json");
  CHECK_THROWS_AS(read_json_file(path), std::runtime_error);
  write_json_file(path, Json{{"ok", true}});
  CHECK(read_json_file(path).at("ok").get<bool>());
}

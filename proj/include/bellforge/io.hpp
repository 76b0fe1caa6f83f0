#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "bellforge/analytic.hpp"
#include "bellforge/behavior.hpp"
#include "bellforge/bounds.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/optimize.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/strategy.hpp"

namespace bellforge {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings so functional and exact-behavior
// files never pick up float drift; floats appear only in quantum behaviors
// and scan outputs.

inline Json rational_to_json(const Rational& value) { return value.str(); }

inline Rational rational_from_json(const Json& value) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw std::invalid_argument("expected a rational encoded as \"num/den\" or an integer");
}

template <typename T>
Json behavior_to_json(const BasicBehavior<T>& behavior) {
  Json entries = Json::array();
  const int n = behavior.n_parties();
  for (std::size_t x = 0; x < behavior.side(); ++x) {
    for (std::size_t a = 0; a < behavior.side(); ++a) {
      Json entry;
      entry["x"] = unpack_bits(x, n);
      entry["a"] = unpack_bits(a, n);
      if constexpr (std::is_same_v<T, Rational>) {
        entry["p"] = rational_to_json(behavior.at(x, a));
      } else {
        entry["p"] = behavior.at(x, a);
      }
      entries.push_back(std::move(entry));
    }
  }
  return Json{{"n", n}, {"entries", std::move(entries)}};
}

using LoadedBehavior = std::variant<Behavior, RationalBehavior>;

/// Reads a behavior table; every 4^n entry must be present exactly once.
/// The table loads as exact rationals when every probability is encoded as a
/// string, otherwise as doubles.
inline LoadedBehavior behavior_from_json(const Json& json) {
  const int n = json.at("n").get<int>();
  if (n < 1 || n > kDefaultPartyCap) throw std::invalid_argument("behavior JSON: bad party count");
  const std::size_t side = std::size_t{1} << n;
  bool exact = true;
  for (const Json& entry : json.at("entries")) {
    if (!entry.at("p").is_string()) exact = false;
  }
  std::vector<bool> seen(side * side, false);
  auto index_of = [&](const Json& entry) {
    const Bits x = entry.at("x").get<Bits>();
    const Bits a = entry.at("a").get<Bits>();
    if (static_cast<int>(x.size()) != n || static_cast<int>(a.size()) != n) {
      throw std::invalid_argument("behavior JSON: entry vector length mismatch");
    }
    const std::size_t index = pack_bits(x) * side + pack_bits(a);
    if (seen[index]) throw std::invalid_argument("behavior JSON: duplicate entry");
    seen[index] = true;
    return index;
  };
  LoadedBehavior result = [&]() -> LoadedBehavior {
    if (exact) {
      std::vector<Rational> table(side * side);
      for (const Json& entry : json.at("entries")) {
        table[index_of(entry)] = rational_from_json(entry.at("p"));
      }
      return RationalBehavior(n, std::move(table));
    }
    std::vector<double> table(side * side, 0.0);
    for (const Json& entry : json.at("entries")) {
      table[index_of(entry)] = entry.at("p").is_string()
                                   ? Rational::parse(entry.at("p").get<std::string>()).to_double()
                                   : entry.at("p").get<double>();
    }
    return Behavior(n, std::move(table));
  }();
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("behavior JSON: missing table entries");
  }
  return result;
}

inline Json functional_to_json(const BellFunctional& f) {
  Json terms = Json::array();
  for (const auto& [key, coefficient] : f.terms()) {
    terms.push_back(Json{{"x", unpack_bits(key.x, f.n_parties())},
                         {"a", unpack_bits(key.a, f.n_parties())},
                         {"c", rational_to_json(coefficient)}});
  }
  Json meta;
  meta["family"] = f.meta().family;
  for (const auto& [k, v] : f.meta().params) meta[k] = v;
  return Json{{"n", f.n_parties()},
              {"bound", rational_to_json(f.bound())},
              {"terms", std::move(terms)},
              {"meta", std::move(meta)}};
}

inline BellFunctional functional_from_json(const Json& json) {
  BellFunctional f(json.at("n").get<int>());
  for (const Json& term : json.at("terms")) {
    f.add_term(term.at("x").get<Bits>(), term.at("a").get<Bits>(),
               rational_from_json(term.at("c")));
  }
  if (json.contains("bound")) f.set_bound(rational_from_json(json.at("bound")));
  if (json.contains("meta")) {
    for (const auto& [key, value] : json.at("meta").items()) {
      if (!value.is_string()) continue;
      if (key == "family") {
        f.meta().family = value.get<std::string>();
      } else {
        f.meta().set(key, value.get<std::string>());
      }
    }
  }
  return f;
}

inline Json state_to_json(const PureState& state) {
  Json amps = Json::array();
  for (const Complex& amp : state.amplitudes()) {
    amps.push_back(Json::array({amp.real(), amp.imag()}));
  }
  return Json{{"n", state.n_qubits()}, {"amps", std::move(amps)}};
}

inline PureState state_from_json(const Json& json) {
  const int n = json.at("n").get<int>();
  Amplitudes amps;
  for (const Json& pair : json.at("amps")) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return PureState(n, std::move(amps));
}

inline Json assignment_to_json(const MeasurementAssignment& assignment) {
  Json parties = Json::array();
  for (int p = 0; p < assignment.n_parties(); ++p) {
    Json settings = Json::array();
    for (int s = 0; s < 2; ++s) {
      settings.push_back(Json{{"alpha", assignment.at(p, s).alpha}, {"delta", assignment.at(p, s).delta}});
    }
    parties.push_back(Json{{"settings", std::move(settings)}});
  }
  return Json{{"parties", std::move(parties)}};
}

inline MeasurementAssignment assignment_from_json(const Json& json) {
  std::vector<std::array<QubitMeasurement, 2>> per_party;
  for (const Json& party : json.at("parties")) {
    const Json& settings = party.at("settings");
    if (settings.size() != 2) throw std::invalid_argument("assignment JSON: need two settings per party");
    per_party.push_back({QubitMeasurement{settings[0].at("alpha").get<double>(),
                                          settings[0].at("delta").get<double>()},
                         QubitMeasurement{settings[1].at("alpha").get<double>(),
                                          settings[1].at("delta").get<double>()}});
  }
  const int n = static_cast<int>(per_party.size());
  return MeasurementAssignment(n, std::move(per_party));
}

inline Json strategy_to_json(const DeterministicStrategy& strategy) {
  Json outputs = Json::array();
  for (int p = 0; p < strategy.n_parties(); ++p) {
    outputs.push_back(Json::array({strategy.output(p, 0), strategy.output(p, 1)}));
  }
  return Json{{"n", strategy.n_parties()}, {"outputs", std::move(outputs)}};
}

inline DeterministicStrategy strategy_from_json(const Json& json) {
  std::vector<std::array<std::uint8_t, 2>> outputs;
  for (const Json& row : json.at("outputs")) {
    outputs.push_back({row.at(0).get<std::uint8_t>(), row.at(1).get<std::uint8_t>()});
  }
  return DeterministicStrategy(json.at("n").get<int>(), std::move(outputs));
}

inline Json certificate_to_json(const BoundCertificate& cert) {
  Json json;
  switch (cert.kind) {
    case BoundKind::Local: json["kind"] = "local"; break;
    case BoundKind::BiseparableTripartite: json["kind"] = "bisep3"; break;
    case BoundKind::GroupedSampled: json["kind"] = "sampled"; break;
  }
  if (cert.kind == BoundKind::GroupedSampled) {
    json["value"] = cert.value_float;
  } else {
    json["value"] = rational_to_json(cert.value);
  }
  json["value_float"] = cert.value_float;
  json["witness_note"] = cert.witness_note;
  if (cert.witness_strategy) json["witness_strategy"] = strategy_to_json(*cert.witness_strategy);
  if (cert.witness_rational) json["witness_behavior"] = behavior_to_json(*cert.witness_rational);
  if (cert.witness_double) json["witness_behavior"] = behavior_to_json(*cert.witness_double);
  if (cert.sample_count > 0) json["samples"] = cert.sample_count;
  if (cert.kind == BoundKind::GroupedSampled) json["rng_seed"] = cert.rng_seed;
  return json;
}

inline Json ghz_certificate_to_json(const GhzCertificate& cert) {
  return Json{{"n", cert.n_parties},
              {"theta", cert.theta},
              {"alpha0", cert.alpha0},
              {"alpha1", cert.alpha1},
              {"value_sim", cert.value_sim},
              {"value_closed", cert.value_closed},
              {"residual_single_flip", cert.residual_single_flip},
              {"residual_double_setting", cert.residual_double_setting}};
}

inline Json hardy_certificate_to_json(const HardyCertificate& cert) {
  auto meas = [](const QubitMeasurement& m) { return Json{{"alpha", m.alpha}, {"delta", m.delta}}; };
  return Json{{"theta", cert.theta},
              {"alpha", cert.alpha},
              {"delta", cert.delta},
              {"a_setting0", meas(cert.a_setting0)},
              {"a_setting1", meas(cert.a_setting1)},
              {"b_setting0", meas(cert.b_setting0)},
              {"b_setting1", meas(cert.b_setting1)},
              {"p_00_00", cert.p_00_00},
              {"p_01_01", cert.p_01_01},
              {"p_10_10", cert.p_10_10},
              {"p_00_11", cert.p_00_11}};
}

inline Json symmetric_state_certificate_to_json(const SymmetricStateCertificate& cert) {
  return Json{{"assignment", assignment_to_json(cert.assignment)},
              {"projection_alpha", cert.projection_alpha},
              {"schmidt_theta", cert.schmidt_theta},
              {"hardy_alpha", cert.hardy_alpha},
              {"hardy_delta", cert.hardy_delta},
              {"success_probability", cert.success_probability},
              {"p_root", cert.p_root},
              {"zero_residuals", cert.zero_residuals},
              {"value", cert.value}};
}

inline Json optimization_result_to_json(const OptimizationResult& result) {
  return Json{{"best_value", result.best_value},
              {"best_assignment", assignment_to_json(result.best_assignment)},
              {"restarts_used", result.restarts_used},
              {"converged", result.converged},
              {"rng_seed", result.rng_seed},
              {"restart_values", result.restart_values}};
}

// CSV output uses '.' decimals and a fixed column order; no locale anywhere.

inline std::string csv_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

inline std::string ghz_scan_csv(const std::vector<GhzCertificate>& rows) {
  std::string csv = "theta,alpha0,alpha1,value_sim,value_closed,residual\n";
  for (const GhzCertificate& row : rows) {
    csv += csv_double(row.theta) + "," + csv_double(row.alpha0) + "," + csv_double(row.alpha1) + "," +
           csv_double(row.value_sim) + "," + csv_double(row.value_closed) + "," +
           csv_double(std::abs(row.value_sim - row.value_closed)) + "\n";
  }
  return csv;
}

inline std::string scan_csv(const ScanSummary& summary) {
  std::string csv = "state_index,best_value,restarts_to_first_violation\n";
  for (const ScanEntry& entry : summary.entries) {
    csv += std::to_string(entry.state_index) + "," + csv_double(entry.best_value) + "," +
           std::to_string(entry.restarts_to_first_violation) + "\n";
  }
  return csv;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_json_file(const std::string& path, const Json& json) {
  write_text_file(path, json.dump(2) + "\n");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  Json json;
  try {
    in >> json;
  } catch (const Json::parse_error& error) {
    throw std::runtime_error("malformed JSON in " + path + ": " + error.what());
  }
  return json;
}

}  // namespace bellforge

// bellforge: build seed-based multipartite Bell inequality families, certify
// their classical bounds, and reproduce quantum violations from pure states.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellforge/bellforge.hpp"

namespace bf = bellforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCertification = 2;

bf::Seed make_seed(const std::string& name, const std::string& beta) {
  if (name == "chsh") return bf::chsh_variant();
  if (name == "tilted") return bf::tilted_chsh(bf::Rational::parse(beta));
  if (name == "tripartite") return bf::tripartite_seed();
  throw std::invalid_argument("unknown seed '" + name + "' (expected chsh, tilted, tripartite)");
}

bf::PureState parse_state_spec(const std::string& spec) {
  if (spec.rfind("ghz:", 0) == 0) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("state spec: expected ghz:<n>:<theta>");
    return bf::ghz_state(std::stoi(spec.substr(first + 1, second - first - 1)),
                         std::stod(spec.substr(second + 1)));
  }
  if (spec.rfind("haar:", 0) == 0) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) {
      return bf::haar_random_state(std::stoi(spec.substr(first + 1)), 0);
    }
    return bf::haar_random_state(std::stoi(spec.substr(first + 1, second - first - 1)),
                                 std::stoull(spec.substr(second + 1)));
  }
  return bf::state_from_json(bf::read_json_file(spec));
}

void emit(const bf::Json& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json.dump(2) << "\n";
  } else {
    bf::write_json_file(out_path, json);
  }
}

int run_build(const std::string& family, const std::string& seed_name, const std::string& beta,
              int n, int m, std::vector<int> center, const std::string& mu12, const std::string& mu13,
              const std::string& mu23, const std::string& out) {
  bf::BellFunctional functional = [&]() {
    if (family == "chsh" || family == "tilted" || family == "tripartite") {
      return make_seed(family, beta).functional;
    }
    if (family == "sym") return bf::build_symmetric(make_seed(seed_name, beta), n);
    if (family == "centered") {
      if (center.empty()) center = {0};
      return bf::build_centered(make_seed(seed_name, beta), n, center);
    }
    if (family == "mu") {
      return bf::build_mu_family(bf::Rational::parse(mu12), bf::Rational::parse(mu13),
                                 bf::Rational::parse(mu23));
    }
    if (family == "msep-sym") {
      return bf::build_m_separable(make_seed(seed_name, beta), n, m, bf::MSeparableVariant::Symmetric);
    }
    if (family == "msep-centered") {
      return bf::build_m_separable(make_seed(seed_name, beta), n, m, bf::MSeparableVariant::Centered);
    }
    if (family == "recursive-sym") return bf::build_recursive_symmetric(n);
    throw std::invalid_argument("unknown family '" + family + "'");
  }();
  if (functional.meta().get("trivial_warning") == "1") {
    std::cerr << "warning: mu12 + mu13 + mu23 <= 1, the inequality is trivial\n";
  }
  emit(bf::functional_to_json(functional), out);
  return kExitOk;
}

int run_evaluate(const std::string& functional_path, const std::string& behavior_path,
                 const std::string& out) {
  const bf::BellFunctional functional = bf::functional_from_json(bf::read_json_file(functional_path));
  const bf::LoadedBehavior behavior = bf::behavior_from_json(bf::read_json_file(behavior_path));
  bf::Json result;
  if (std::holds_alternative<bf::RationalBehavior>(behavior)) {
    const bf::Rational value = functional.evaluate(std::get<bf::RationalBehavior>(behavior));
    result = bf::Json{{"value", value.str()}, {"value_float", value.to_double()}, {"exact", true}};
  } else {
    result = bf::Json{{"value", functional.evaluate(std::get<bf::Behavior>(behavior))}, {"exact", false}};
  }
  emit(result, out);
  return kExitOk;
}

int run_certify(const std::string& functional_path, const std::string& kind, int m,
                std::uint64_t samples, std::uint64_t seed, const std::string& out) {
  const bf::BellFunctional functional = bf::functional_from_json(bf::read_json_file(functional_path));
  const bf::BoundCertificate cert = [&]() {
    if (kind == "local") return bf::local_bound(functional);
    if (kind == "bisep3") return bf::biseparable_bound_tripartite(functional);
    if (kind == "sampled") return bf::grouped_bound_sampled(functional, m, samples, seed);
    throw std::invalid_argument("unknown certify kind '" + kind + "' (expected local, bisep3, sampled)");
  }();

  // The witness must re-evaluate to the reported value.
  if (cert.witness_rational && cert.kind != bf::BoundKind::GroupedSampled) {
    if (functional.evaluate(*cert.witness_rational) != cert.value) {
      std::cout << "certification failure: witness does not reproduce the bound\n";
      return kExitCertification;
    }
  }
  if (cert.witness_double) {
    const double replay = functional.evaluate(*cert.witness_double);
    if (std::abs(replay - cert.value_float) > 1e-12) {
      std::cout << "certification failure: witness residual " << std::abs(replay - cert.value_float)
                << "\n";
      return kExitCertification;
    }
  }
  emit(bf::certificate_to_json(cert), out);
  return kExitOk;
}

int run_ghz_scan(int n, double theta_min, double theta_max, int steps, double tol,
                 const std::string& out) {
  if (steps < 1) throw std::invalid_argument("ghz-scan requires at least one step");
  std::vector<bf::GhzCertificate> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double theta =
        steps == 1 ? theta_min : theta_min + (theta_max - theta_min) * i / (steps - 1);
    rows.push_back(bf::ghz_violation(n, theta, tol));
  }
  const std::string csv = bf::ghz_scan_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    bf::write_text_file(out, csv);
  }
  return kExitOk;
}

int run_hardy(double theta, double alpha, double delta, const std::string& out) {
  emit(bf::hardy_certificate_to_json(bf::hardy_measurements(theta, alpha, delta)), out);
  return kExitOk;
}

int run_theorem2(const std::string& state_path, const std::string& out_assignment,
                 const std::string& out_certificate) {
  const bf::Json json = bf::read_json_file(state_path);
  bf::AcinParams params;
  params.h0 = json.at("h0").get<double>();
  params.h1 = json.at("h1").get<double>();
  params.h2 = json.at("h2").get<double>();
  params.h3 = json.at("h3").get<double>();
  params.h4 = json.at("h4").get<double>();
  params.phi = json.value("phi", 0.0);
  const bf::SymmetricStateCertificate cert = bf::symmetric_state_violation(params);
  if (!out_assignment.empty()) {
    bf::write_json_file(out_assignment, bf::assignment_to_json(cert.assignment));
  }
  emit(bf::symmetric_state_certificate_to_json(cert), out_certificate);
  return kExitOk;
}

int run_optimize(const std::string& functional_path, const std::string& state_spec, int restarts,
                 std::uint64_t seed, const std::string& method, unsigned threads,
                 const std::string& out) {
  const bf::BellFunctional functional = bf::functional_from_json(bf::read_json_file(functional_path));
  const bf::PureState state = parse_state_spec(state_spec);
  bf::OptimizeOptions options;
  options.restarts = restarts;
  options.rng_seed = seed;
  options.threads = threads;
  if (method == "seesaw") {
    options.method = bf::OptimizeMethod::CoordinateSeeSaw;
  } else if (method == "simplex") {
    options.method = bf::OptimizeMethod::DirectSearch;
  } else {
    throw std::invalid_argument("unknown method '" + method + "' (expected seesaw, simplex)");
  }
  emit(bf::optimization_result_to_json(bf::optimize(functional, state, options)), out);
  return kExitOk;
}

int run_scan(const std::string& functional_path, int n, int count, int restarts, std::uint64_t seed,
             unsigned threads, const std::string& out_csv, const std::string& out_json) {
  const bf::BellFunctional functional = bf::functional_from_json(bf::read_json_file(functional_path));
  const bf::ScanSummary summary = bf::scan_random_states(functional, n, count, restarts, seed, threads);
  const std::string csv = bf::scan_csv(summary);
  if (out_csv.empty()) {
    std::cout << csv;
  } else {
    bf::write_text_file(out_csv, csv);
  }
  if (!out_json.empty()) {
    bf::write_json_file(out_json, bf::Json{{"fraction_violating", summary.fraction_violating},
                                           {"min_best", summary.min_best},
                                           {"max_best", summary.max_best},
                                           {"rng_seed", summary.rng_seed}});
  }
  return kExitOk;
}

int run_ns_box(int n, const std::string& out) {
  emit(bf::behavior_to_json(bf::ns_box<bf::Rational>(n)), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seed-based multipartite Bell inequality toolkit"};
  app.require_subcommand(1);

  unsigned threads = 0;  // 0: BELLFORGE_THREADS or hardware default
  app.add_option("--threads", threads, "worker cap for parallel sections");

  // build
  std::string family;
  std::string seed_name = "chsh";
  std::string beta = "0";
  std::string mu12 = "1";
  std::string mu13 = "1";
  std::string mu23 = "1";
  int n = 3;
  int m = 2;
  std::vector<int> center;
  std::string out;
  auto* build = app.add_subcommand("build", "construct a Bell functional and emit it as JSON");
  build->add_option("--family", family,
                    "chsh | tilted | tripartite | sym | centered | mu | msep-sym | msep-centered | "
                    "recursive-sym")
      ->required();
  build->add_option("--seed", seed_name, "seed for sym/centered/msep families");
  build->add_option("--beta", beta, "tilt weight for the tilted seed (rational)");
  build->add_option("--n", n, "number of parties");
  build->add_option("--m", m, "number of groups for msep families");
  build->add_option("--center", center, "center parties for centered families (0-based)");
  build->add_option("--mu12", mu12, "mu family weight (rational)");
  build->add_option("--mu13", mu13, "mu family weight (rational)");
  build->add_option("--mu23", mu23, "mu family weight (rational)");
  build->add_option("--out", out, "output path (stdout when omitted)");

  // evaluate
  std::string functional_path;
  std::string behavior_path;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate a functional on a behavior");
  evaluate->add_option("--functional", functional_path)->required();
  evaluate->add_option("--behavior", behavior_path)->required();
  evaluate->add_option("--out", out);

  // certify
  std::string kind = "local";
  std::uint64_t samples = 10000;
  std::uint64_t rng_seed = 0;
  auto* certify = app.add_subcommand("certify", "certify a bound of a functional");
  certify->add_option("--functional", functional_path)->required();
  certify->add_option("--kind", kind, "local | bisep3 | sampled");
  certify->add_option("--m", m, "group count for sampled certification");
  certify->add_option("--samples", samples);
  certify->add_option("--seed", rng_seed);
  certify->add_option("--out", out);

  // ghz-scan
  double theta_min = 0.05;
  double theta_max = bf::kPi / 4 - 0.05;
  int steps = 20;
  double tol = 1e-10;
  auto* ghz = app.add_subcommand("ghz-scan", "closed form vs simulator on a GHZ theta grid (CSV)");
  ghz->add_option("--n", n)->required();
  ghz->add_option("--theta-min", theta_min);
  ghz->add_option("--theta-max", theta_max);
  ghz->add_option("--steps", steps);
  ghz->add_option("--tol", tol);
  ghz->add_option("--out", out);

  // hardy-demo
  double theta = 0.5;
  double alpha = 0.8;
  double delta = 0.0;
  auto* hardy = app.add_subcommand("hardy-demo", "Hardy paradox measurements on a Schmidt state");
  hardy->add_option("--theta", theta)->required();
  hardy->add_option("--alpha", alpha)->required();
  hardy->add_option("--delta", delta);
  hardy->add_option("--out", out);

  // theorem2
  std::string state_path;
  std::string out_assignment;
  auto* theorem2 = app.add_subcommand(
      "theorem2", "violation construction for symmetric three-qubit states (h-parameter JSON in)");
  theorem2->add_option("--state", state_path)->required();
  theorem2->add_option("--out-assignment", out_assignment);
  theorem2->add_option("--out-certificate", out);

  // optimize
  std::string state_spec;
  int restarts = 20;
  std::string method = "seesaw";
  auto* optimize = app.add_subcommand("optimize", "maximize a functional over measurement angles");
  optimize->add_option("--functional", functional_path)->required();
  optimize->add_option("--state", state_spec, "state JSON path, ghz:<n>:<theta>, or haar:<n>:<seed>")
      ->required();
  optimize->add_option("--restarts", restarts);
  optimize->add_option("--seed", rng_seed);
  optimize->add_option("--method", method, "seesaw | simplex");
  optimize->add_option("--out", out);

  // scan
  int count = 50;
  std::string out_json;
  auto* scan = app.add_subcommand("scan", "optimize over Haar-random states; CSV per state");
  scan->add_option("--functional", functional_path)->required();
  scan->add_option("--n", n)->required();
  scan->add_option("--count", count);
  scan->add_option("--restarts", restarts);
  scan->add_option("--seed", rng_seed);
  scan->add_option("--out", out);
  scan->add_option("--out-summary", out_json);

  // ns-box
  auto* nsbox = app.add_subcommand("ns-box", "emit the n-party NS box as an exact behavior JSON");
  nsbox->add_option("--n", n)->required();
  nsbox->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (build->parsed()) {
      return run_build(family, seed_name, beta, n, m, center, mu12, mu13, mu23, out);
    }
    if (evaluate->parsed()) return run_evaluate(functional_path, behavior_path, out);
    if (certify->parsed()) return run_certify(functional_path, kind, m, samples, rng_seed, out);
    if (ghz->parsed()) return run_ghz_scan(n, theta_min, theta_max, steps, tol, out);
    if (hardy->parsed()) return run_hardy(theta, alpha, delta, out);
    if (theorem2->parsed()) return run_theorem2(state_path, out_assignment, out);
    if (optimize->parsed()) {
      return run_optimize(functional_path, state_spec, restarts, rng_seed, method, threads, out);
    }
    if (scan->parsed()) {
      return run_scan(functional_path, n, count, restarts, rng_seed, threads, out, out_json);
    }
    if (nsbox->parsed()) return run_ns_box(n, out);
  } catch (const bf::CertificationError& error) {
    std::cout << "certification failure: " << error.what() << "\n";
    return kExitCertification;
  } catch (const std::invalid_argument& error) {
    std::cerr << "validation error: " << error.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

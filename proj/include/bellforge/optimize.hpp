#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bellforge/analytic.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/parallel.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/rng.hpp"

namespace bellforge {

/// Best values below this threshold count as "no violation" in scan
/// summaries; it separates genuine positives from convergence noise.
inline constexpr double kViolationThreshold = 1e-8;

/// Functional value of the behavior induced by (state, assignment),
/// evaluated term by term without materializing the full table.
inline double assignment_value(const BellFunctional& f, const PureState& state,
                               const MeasurementAssignment& assignment) {
  if (f.n_parties() != state.n_qubits()) {
    throw std::invalid_argument("functional and state party counts differ");
  }
  double total = 0.0;
  for (const auto& [key, coefficient] : f.terms()) {
    total += coefficient.to_double() * born_probability(state, assignment, key.x, key.a);
  }
  return total;
}

enum class OptimizeMethod { CoordinateSeeSaw, DirectSearch };

struct OptimizeOptions {
  int restarts = 20;
  std::uint64_t rng_seed = 0;
  OptimizeMethod method = OptimizeMethod::CoordinateSeeSaw;
  int max_sweeps = 200;
  double tol = 1e-10;
  std::optional<MeasurementAssignment> initial;  // used as restart 0 when set
  unsigned threads = 1;
};

struct OptimizationResult {
  double best_value = 0.0;
  MeasurementAssignment best_assignment;
  int restarts_used = 0;
  bool converged = false;
  std::uint64_t rng_seed = 0;
  std::vector<double> restart_values;      // best value per restart, index order
  std::vector<double> best_sweep_trace;    // per-sweep values of the winning restart
};

namespace detail {

/// One derivative-free coordinate line search. Restricted to a single
/// measurement angle the objective is exactly A + B cos(w t) + C sin(w t)
/// (w = 2 for the polar angle, 1 for the phase), so three probes determine
/// the maximizer in closed form. The update never decreases the objective.
template <typename Setter>
double trig_line_search(double current_value, double current_t, double omega, Setter&& set_and_eval) {
  const double quarter = kPi / (2.0 * omega);
  const double f0 = set_and_eval(0.0);
  const double f1 = set_and_eval(2.0 * quarter);
  const double f2 = set_and_eval(quarter);
  const double mean = 0.5 * (f0 + f1);
  const double b = 0.5 * (f0 - f1);
  const double c = f2 - mean;
  const double best_t = std::atan2(c, b) / omega;
  const double candidate = set_and_eval(best_t);
  if (candidate >= current_value) return candidate;
  set_and_eval(current_t);
  return current_value;
}

struct SeesawOutcome {
  double value = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

inline SeesawOutcome run_seesaw(const BellFunctional& f, const PureState& state,
                                MeasurementAssignment& assignment, int max_sweeps, double tol) {
  const int n = state.n_qubits();
  SeesawOutcome outcome;
  outcome.value = assignment_value(f, state, assignment);
  outcome.trace.push_back(outcome.value);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = outcome.value;
    for (int party = 0; party < n; ++party) {
      for (int setting = 0; setting < 2; ++setting) {
        QubitMeasurement& meas = assignment.at(party, setting);
        outcome.value = trig_line_search(outcome.value, meas.alpha, 2.0, [&](double alpha) {
          meas.alpha = alpha;
          return assignment_value(f, state, assignment);
        });
        outcome.value = trig_line_search(outcome.value, meas.delta, 1.0, [&](double delta) {
          meas.delta = delta;
          return assignment_value(f, state, assignment);
        });
      }
    }
    outcome.trace.push_back(outcome.value);
    if (outcome.value - before < tol) {
      outcome.converged = true;
      break;
    }
  }
  return outcome;
}

inline MeasurementAssignment random_assignment(int n_parties, Rng& rng) {
  std::vector<std::array<QubitMeasurement, 2>> measurements(static_cast<std::size_t>(n_parties));
  for (auto& pair : measurements) {
    pair[0] = QubitMeasurement{rng.uniform() * kPi, rng.uniform() * 2.0 * kPi};
    pair[1] = QubitMeasurement{rng.uniform() * kPi, rng.uniform() * 2.0 * kPi};
  }
  return MeasurementAssignment(n_parties, std::move(measurements));
}

/// Nelder-Mead over all 4n angles; derivative-free fallback for objectives
/// the see-saw handles poorly.
inline SeesawOutcome run_simplex(const BellFunctional& f, const PureState& state,
                                 MeasurementAssignment& assignment, int max_iterations, double tol) {
  const int n = state.n_qubits();
  const std::size_t dim = static_cast<std::size_t>(4 * n);
  auto pack = [&](const MeasurementAssignment& a) {
    std::vector<double> params(dim);
    for (int p = 0; p < n; ++p) {
      for (int s = 0; s < 2; ++s) {
        params[static_cast<std::size_t>(4 * p + 2 * s)] = a.at(p, s).alpha;
        params[static_cast<std::size_t>(4 * p + 2 * s + 1)] = a.at(p, s).delta;
      }
    }
    return params;
  };
  auto unpack = [&](const std::vector<double>& params) {
    MeasurementAssignment a = assignment;
    for (int p = 0; p < n; ++p) {
      for (int s = 0; s < 2; ++s) {
        a.at(p, s).alpha = params[static_cast<std::size_t>(4 * p + 2 * s)];
        a.at(p, s).delta = params[static_cast<std::size_t>(4 * p + 2 * s + 1)];
      }
    }
    return a;
  };
  auto objective = [&](const std::vector<double>& params) {
    return -assignment_value(f, state, unpack(params));  // minimize the negative
  };

  std::vector<std::vector<double>> simplex(dim + 1, pack(assignment));
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += 0.35;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

  SeesawOutcome outcome;
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    std::vector<std::size_t> order(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];
    if (values[worst] - values[best] < tol) {
      outcome.converged = true;
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / static_cast<double>(dim);
    }
    auto blend = [&](double factor) {
      std::vector<double> point(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        point[d] = centroid[d] + factor * (simplex[worst][d] - centroid[d]);
      }
      return point;
    };
    std::vector<double> reflected = blend(-1.0);
    double reflected_value = objective(reflected);
    if (reflected_value < values[best]) {
      std::vector<double> expanded = blend(-2.0);
      const double expanded_value = objective(expanded);
      if (expanded_value < reflected_value) {
        simplex[worst] = std::move(expanded);
        values[worst] = expanded_value;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = reflected_value;
      }
    } else if (reflected_value < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = reflected_value;
    } else {
      std::vector<double> contracted = blend(0.5);
      const double contracted_value = objective(contracted);
      if (contracted_value < values[worst]) {
        simplex[worst] = std::move(contracted);
        values[worst] = contracted_value;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
          }
          values[i] = objective(simplex[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (values[i] < values[best]) best = i;
  }
  assignment = unpack(simplex[best]);
  outcome.value = -values[best];
  outcome.trace.push_back(outcome.value);
  return outcome;
}

}  // namespace detail

/// Detects GHZ-like states cos(theta)|0..0> - sin(theta)|1..1> with theta
/// strictly inside (0, pi/4) and returns the analytic measurement point,
/// which then seeds restart 0 of the optimizer.
inline std::optional<MeasurementAssignment> analytic_initial_assignment(const PureState& state) {
  const int n = state.n_qubits();
  if (n < 3) return std::nullopt;
  const Complex head = state.amplitude(0);
  const Complex tail = state.amplitude(state.dim() - 1);
  for (std::size_t i = 1; i + 1 < state.dim(); ++i) {
    if (std::abs(state.amplitude(i)) > 1e-12) return std::nullopt;
  }
  if (std::abs(head.imag()) > 1e-12 || std::abs(tail.imag()) > 1e-12) return std::nullopt;
  if (!(head.real() > 0.0) || !(tail.real() < 0.0)) return std::nullopt;
  const double theta = std::atan2(-tail.real(), head.real());
  if (!(theta > 1e-9 && theta < kPi / 4 - 1e-9)) return std::nullopt;
  return ghz_assignment(n, theta);
}

/// Maximizes a Bell functional over measurement assignments on a pure state.
/// Restart 0 uses the provided or detected analytic point when one exists;
/// later restarts draw uniform random angles from per-restart substreams, so
/// results are independent of thread scheduling.
inline OptimizationResult optimize(const BellFunctional& f, const PureState& state,
                                   const OptimizeOptions& options = {}) {
  if (f.n_parties() != state.n_qubits()) {
    throw std::invalid_argument("optimize: functional and state party counts differ");
  }
  const int restarts = std::max(1, options.restarts);
  std::optional<MeasurementAssignment> seed_assignment = options.initial;
  if (!seed_assignment) seed_assignment = analytic_initial_assignment(state);

  struct RestartOutcome {
    double value = 0.0;
    bool converged = false;
    std::optional<MeasurementAssignment> assignment;
    std::vector<double> trace;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));

  parallel_for(static_cast<std::size_t>(restarts), options.threads, [&](std::size_t restart) {
    Rng rng(substream_seed(options.rng_seed, restart));
    MeasurementAssignment assignment =
        (restart == 0 && seed_assignment) ? *seed_assignment
                                          : detail::random_assignment(state.n_qubits(), rng);
    detail::SeesawOutcome run =
        options.method == OptimizeMethod::CoordinateSeeSaw
            ? detail::run_seesaw(f, state, assignment, options.max_sweeps, options.tol)
            : detail::run_simplex(f, state, assignment, 200 * 4 * state.n_qubits(), options.tol);
    RestartOutcome& slot = outcomes[restart];
    slot.value = run.value;
    slot.converged = run.converged;
    slot.assignment = std::move(assignment);
    slot.trace = std::move(run.trace);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].value > outcomes[best].value) best = i;
  }
  OptimizationResult result{outcomes[best].value, *outcomes[best].assignment, 0, false, 0, {}, {}};
  result.restarts_used = restarts;
  result.converged = outcomes[best].converged;
  result.rng_seed = options.rng_seed;
  result.best_sweep_trace = outcomes[best].trace;
  result.restart_values.reserve(outcomes.size());
  for (const RestartOutcome& outcome : outcomes) result.restart_values.push_back(outcome.value);
  return result;
}

struct ScanEntry {
  int state_index = 0;
  double best_value = 0.0;
  int restarts_to_first_violation = -1;  // -1 when no restart violated
};

struct ScanSummary {
  std::vector<ScanEntry> entries;
  double fraction_violating = 0.0;
  double min_best = 0.0;
  double max_best = 0.0;
  std::uint64_t rng_seed = 0;
};

/// Runs the optimizer on Haar-random states; Haar samples are genuinely
/// multipartite entangled almost surely, so the expected outcome for the
/// families built here is a violation on every sample.
inline ScanSummary scan_random_states(const BellFunctional& f, int n_parties, int count,
                                      int restarts, std::uint64_t rng_seed, unsigned threads = 0) {
  if (count < 1) throw std::invalid_argument("scan_random_states requires count >= 1");
  ScanSummary summary;
  summary.rng_seed = rng_seed;
  summary.entries.resize(static_cast<std::size_t>(count));

  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t index) {
    const PureState state = haar_random_state(n_parties, substream_seed(rng_seed, 2 * index));
    OptimizeOptions options;
    options.restarts = restarts;
    options.rng_seed = substream_seed(rng_seed, 2 * index + 1);
    const OptimizationResult result = optimize(f, state, options);
    ScanEntry& entry = summary.entries[index];
    entry.state_index = static_cast<int>(index);
    entry.best_value = result.best_value;
    for (std::size_t r = 0; r < result.restart_values.size(); ++r) {
      if (result.restart_values[r] > kViolationThreshold) {
        entry.restarts_to_first_violation = static_cast<int>(r) + 1;
        break;
      }
    }
  });

  int violating = 0;
  summary.min_best = summary.entries.front().best_value;
  summary.max_best = summary.entries.front().best_value;
  for (const ScanEntry& entry : summary.entries) {
    if (entry.best_value > kViolationThreshold) ++violating;
    summary.min_best = std::min(summary.min_best, entry.best_value);
    summary.max_best = std::max(summary.max_best, entry.best_value);
  }
  summary.fraction_violating = static_cast<double>(violating) / static_cast<double>(count);
  return summary;
}

}  // namespace bellforge

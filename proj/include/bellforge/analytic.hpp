#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bellforge/families.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/quantum.hpp"

namespace bellforge {

/// A numeric certification did not meet its tolerance. Distinct from
/// std::invalid_argument so callers can separate bad inputs (exit 1 in the
/// CLI) from failed certifications (exit 2).
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measurement angles that put the GHZ-state behavior on the Hardy-type
/// point of the symmetric family:
///   alpha0 = arctan(tan^{-3/(3n-4)} theta), alpha1 = -arctan(tan^{-1/(3n-4)} theta).
/// Valid for theta strictly inside (0, pi/4); the construction degenerates at
/// both endpoints (at pi/4 the root probability itself vanishes).
inline std::pair<double, double> ghz_angles(int n_parties, double theta) {
  if (n_parties < 3) throw std::invalid_argument("ghz_angles requires n >= 3");
  if (!(theta > 0.0 && theta < kPi / 4)) {
    throw std::invalid_argument("ghz_angles requires theta strictly inside (0, pi/4)");
  }
  const double t = std::tan(theta);
  const double denom = 3.0 * n_parties - 4.0;
  const double alpha0 = std::atan(std::pow(t, -3.0 / denom));
  const double alpha1 = -std::atan(std::pow(t, -1.0 / denom));
  return {alpha0, alpha1};
}

inline MeasurementAssignment ghz_assignment(int n_parties, double theta) {
  const auto [alpha0, alpha1] = ghz_angles(n_parties, theta);
  return MeasurementAssignment::identical(n_parties, QubitMeasurement{alpha0, 0.0},
                                          QubitMeasurement{alpha1, 0.0});
}

/// Closed forms for the three probabilities the symmetric family touches on
/// the GHZ point, evaluated directly from the angle formulas. Serves as the
/// oracle the simulator output is compared against.
struct GhzClosedForm {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double p_root = 0.0;            // P(00...0 | 00...0)
  double p_single_flip = 0.0;     // P(10...0 | 10...0), zero by construction
  double p_double_setting = 0.0;  // P(00...0 | 110...0), zero by construction
  double value = 0.0;             // (n-1) * p_root
};

inline GhzClosedForm ghz_closed_form(int n_parties, double theta) {
  const auto [alpha0, alpha1] = ghz_angles(n_parties, theta);
  const double c0 = std::cos(alpha0);
  const double s0 = std::sin(alpha0);
  const double c1 = std::cos(alpha1);
  const double s1 = std::sin(alpha1);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  auto ipow = [](double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
  };
  GhzClosedForm result;
  result.alpha0 = alpha0;
  result.alpha1 = alpha1;
  const double root_amp = ipow(c0, n_parties) * ct - ipow(s0, n_parties) * st;
  const double single_amp = ipow(c0, n_parties - 1) * s1 * ct + ipow(s0, n_parties - 1) * c1 * st;
  const double double_amp = ipow(c0, n_parties - 2) * c1 * c1 * ct - ipow(s0, n_parties - 2) * s1 * s1 * st;
  result.p_root = root_amp * root_amp;
  result.p_single_flip = single_amp * single_amp;
  result.p_double_setting = double_amp * double_amp;
  result.value = (n_parties - 1) * result.p_root;
  return result;
}

struct GhzCertificate {
  int n_parties = 0;
  double theta = 0.0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double value_sim = 0.0;
  double value_closed = 0.0;
  double residual_single_flip = 0.0;    // P(10 0|10 0), must vanish
  double residual_double_setting = 0.0; // P(00 0|11 0), must vanish
};

/// Builds the GHZ behavior through the simulator, verifies the two zero
/// conditions, and cross-checks the violation against the closed form. The
/// two code paths are independent: one goes through Born-rule contraction,
/// the other through the angle formulas alone.
inline GhzCertificate ghz_violation(int n_parties, double theta, double tol = 1e-10) {
  const GhzClosedForm closed = ghz_closed_form(n_parties, theta);
  const PureState state = ghz_state(n_parties, theta);
  const MeasurementAssignment assignment = ghz_assignment(n_parties, theta);
  const Behavior behavior = behavior_from_state(state, assignment);

  const int n = n_parties;
  const std::size_t x_single = std::size_t{1} << (n - 1);
  const std::size_t x_double = x_single | (std::size_t{1} << (n - 2));

  GhzCertificate cert;
  cert.n_parties = n;
  cert.theta = theta;
  cert.alpha0 = closed.alpha0;
  cert.alpha1 = closed.alpha1;
  cert.residual_single_flip = behavior.at(x_single, x_single);
  cert.residual_double_setting = behavior.at(x_double, 0);
  cert.value_sim = build_symmetric(chsh_variant(), n).evaluate(behavior);
  cert.value_closed = closed.value;

  if (cert.residual_single_flip > tol || cert.residual_double_setting > tol) {
    throw CertificationError("ghz_violation: zero-condition residuals " +
                             std::to_string(cert.residual_single_flip) + ", " +
                             std::to_string(cert.residual_double_setting) + " exceed tolerance");
  }
  if (std::abs(cert.value_sim - cert.value_closed) > tol) {
    throw CertificationError("ghz_violation: simulator and closed form disagree, residual " +
                             std::to_string(std::abs(cert.value_sim - cert.value_closed)));
  }
  if (!(cert.value_sim > 0.0)) {
    throw CertificationError("ghz_violation: no violation found");
  }
  return cert;
}

namespace detail {

/// The four outcome-0 effect bras of the Hardy construction on
/// cos(theta)|00> + sin(theta)|11>, for a free first measurement
/// (alpha, delta) on party A. Unnormalized; the paradox conditions are
/// normalization-invariant. Setting-1 effects carry the outcome labeling
/// under which the zeros land on P(01|01), P(10|10) and P(00|11).
struct HardyBras {
  std::array<Complex, 2> a_setting0;
  std::array<Complex, 2> a_setting1;
  std::array<Complex, 2> b_setting0;
  std::array<Complex, 2> b_setting1;
};

inline HardyBras hardy_effect_bras(double theta, double alpha, double delta) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const Complex phase(std::cos(delta), std::sin(delta));
  HardyBras bras;
  bras.a_setting0 = {Complex(ca, 0.0), phase * sa};
  bras.a_setting1 = {std::conj(phase) * (sa * st * st), Complex(-ca * ct * ct, 0.0)};
  bras.b_setting0 = {phase * (sa * st * st * st), Complex(-ca * ct * ct * ct, 0.0)};
  bras.b_setting1 = {Complex(ca * ct, 0.0), std::conj(phase) * (sa * st)};
  return bras;
}

}  // namespace detail

struct HardyCertificate {
  double theta = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  QubitMeasurement a_setting0;
  QubitMeasurement a_setting1;
  QubitMeasurement b_setting0;
  QubitMeasurement b_setting1;
  double p_00_00 = 0.0;  // strictly positive paradox witness
  double p_01_01 = 0.0;  // the three zeros
  double p_10_10 = 0.0;
  double p_00_11 = 0.0;
};

/// Hardy paradox measurements on cos(theta)|00> + sin(theta)|11>. The first
/// measurement of party A is free (alpha, delta); the other three follow.
/// Verifies P(01|01) = P(10|10) = P(00|11) = 0 within tol and P(00|00) > 0.
/// Forbidden parameters (alpha multiple of pi/2, theta outside the open
/// interval (0, pi/4)) are rejected: there the paradox probability
/// sin(2 alpha) sin(4 theta) vanishes identically.
inline HardyCertificate hardy_measurements(double theta, double alpha, double delta,
                                           double tol = 1e-12) {
  if (!(theta > 0.0 && theta < kPi / 4)) {
    throw std::invalid_argument("hardy_measurements requires theta strictly inside (0, pi/4)");
  }
  if (std::abs(std::sin(2.0 * alpha)) < 1e-9) {
    throw std::invalid_argument("hardy_measurements: alpha = 0 or pi/2 is forbidden");
  }

  const detail::HardyBras bras = detail::hardy_effect_bras(theta, alpha, delta);
  HardyCertificate cert;
  cert.theta = theta;
  cert.alpha = alpha;
  cert.delta = delta;
  cert.a_setting0 = QubitMeasurement::from_bra(bras.a_setting0[0], bras.a_setting0[1]);
  cert.a_setting1 = QubitMeasurement::from_bra(bras.a_setting1[0], bras.a_setting1[1]);
  cert.b_setting0 = QubitMeasurement::from_bra(bras.b_setting0[0], bras.b_setting0[1]);
  cert.b_setting1 = QubitMeasurement::from_bra(bras.b_setting1[0], bras.b_setting1[1]);

  const PureState state(2, {Complex(std::cos(theta), 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                            Complex(std::sin(theta), 0.0)});
  MeasurementAssignment assignment(2, {std::array<QubitMeasurement, 2>{cert.a_setting0, cert.a_setting1},
                                       std::array<QubitMeasurement, 2>{cert.b_setting0, cert.b_setting1}});
  const Behavior behavior = behavior_from_state(state, assignment);
  cert.p_00_00 = behavior.at(0b00, 0b00);
  cert.p_01_01 = behavior.at(0b01, 0b01);
  cert.p_10_10 = behavior.at(0b10, 0b10);
  cert.p_00_11 = behavior.at(0b11, 0b00);

  if (cert.p_01_01 > tol || cert.p_10_10 > tol || cert.p_00_11 > tol) {
    throw CertificationError("hardy_measurements: zero-condition residuals " +
                             std::to_string(cert.p_01_01) + ", " + std::to_string(cert.p_10_10) +
                             ", " + std::to_string(cert.p_00_11) + " exceed tolerance");
  }
  if (!(cert.p_00_00 > 0.0)) {
    throw CertificationError("hardy_measurements: paradox probability vanished");
  }
  return cert;
}

struct AcinParams {
  double h0 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double h4 = 0.0;
  double phi = 0.0;
};

struct SymmetricStateCertificate {
  MeasurementAssignment assignment;  // parties 0, 1, 2; parties 1 and 2 identical
  double projection_alpha = 0.0;    // parties 1/2 setting-0 polar angle
  double schmidt_theta = 0.0;
  double hardy_alpha = 0.0;
  double hardy_delta = 0.0;
  double success_probability = 0.0;
  double p_root = 0.0;                         // P(000|000)
  std::array<double, 3> zero_residuals{};      // P(010|010), P(100|100), P(000|110)
  double value = 0.0;                          // centered family, n = 3
};

/// Violation pipeline for symmetric three-qubit states (h2 = h3): picks the
/// shared setting-0 measurement of parties 1 and 2, conditions party 2 on
/// outcome 0, Schmidt-decomposes the prepared two-qubit state, solves the
/// Hardy construction with its free measurement pinned to the chosen one,
/// and maps everything back through the Schmidt rotations. The resulting
/// correlations violate the centered tripartite inequality by exactly
/// P(000|000).
inline SymmetricStateCertificate symmetric_state_violation(const AcinParams& p, double tol = 1e-10) {
  if (std::abs(p.h2 - p.h3) > 1e-12) {
    throw std::invalid_argument("symmetric_state_violation requires the symmetric class h2 = h3");
  }
  if (!(p.h0 > 0.0) || !(p.h2 > 0.0) || !(p.h4 > 0.0)) {
    throw std::invalid_argument("symmetric_state_violation requires h0, h2, h4 > 0 (GME symmetric state)");
  }
  const PureState state = acin_state(p.h0, p.h1, p.h2, p.h3, p.h4, p.phi);
  const BellFunctional centered = build_centered(chsh_variant(), 3, {0});

  double alpha = kPi / 4;
  if (std::abs(std::tan(alpha) + p.h2 / p.h4) < 1e-6) alpha = kPi / 3;

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < 8; ++attempt, alpha = std::fmod(alpha + 0.1, kPi / 2 - 0.05)) {
    if (alpha < 0.05) alpha += 0.2;
    const QubitMeasurement projection{alpha, 0.0};

    auto [conditional, probability] =
        conditional_two_party_state(state, {FixedOutcome{2, projection, 0}});
    const SchmidtDecomposition schmidt = schmidt_decompose(conditional);
    if (schmidt.theta < 1e-6 || schmidt.theta > kPi / 4 - 1e-6) {
      last_failure = "conditional state degenerate (product or maximally entangled)";
      continue;
    }

    // Express the pinned measurement in the Schmidt frame of party 1's qubit.
    const std::array<Complex, 2> target = {Complex(std::cos(alpha), 0.0),
                                           Complex(std::sin(alpha), 0.0)};
    const std::array<Complex, 2> mu = bra_times(target, adjoint(schmidt.rotation_b));
    const double mu0 = std::abs(mu[0]);
    const double mu1 = std::abs(mu[1]);
    const double hardy_alpha = std::atan2(mu1, mu0);
    if (hardy_alpha < 1e-6 || hardy_alpha > kPi / 2 - 1e-6) {
      last_failure = "pinned measurement lands on a forbidden Hardy angle";
      continue;
    }
    const double hardy_delta = std::arg(mu[1]) - std::arg(mu[0]);

    // Party 1 carries the free Hardy measurement (bras A), party 0 the
    // derived ones (bras N); the Schmidt state is swap-invariant, so the
    // roles transfer directly.
    const detail::HardyBras bras = detail::hardy_effect_bras(schmidt.theta, hardy_alpha, hardy_delta);
    const auto map_a = [&](const std::array<Complex, 2>& bra) {
      const std::array<Complex, 2> mapped = bra_times(bra, schmidt.rotation_a);
      return QubitMeasurement::from_bra(mapped[0], mapped[1]);
    };
    const auto map_b = [&](const std::array<Complex, 2>& bra) {
      const std::array<Complex, 2> mapped = bra_times(bra, schmidt.rotation_b);
      return QubitMeasurement::from_bra(mapped[0], mapped[1]);
    };
    const QubitMeasurement party0_s0 = map_a(bras.b_setting0);
    const QubitMeasurement party0_s1 = map_a(bras.b_setting1);
    const QubitMeasurement shared_s1 = map_b(bras.a_setting1);

    MeasurementAssignment assignment(
        3, {std::array<QubitMeasurement, 2>{party0_s0, party0_s1},
            std::array<QubitMeasurement, 2>{projection, shared_s1},
            std::array<QubitMeasurement, 2>{projection, shared_s1}});

    const Behavior behavior = behavior_from_state(state, assignment);
    SymmetricStateCertificate cert{assignment};
    cert.projection_alpha = alpha;
    cert.schmidt_theta = schmidt.theta;
    cert.hardy_alpha = hardy_alpha;
    cert.hardy_delta = hardy_delta;
    cert.success_probability = probability;
    cert.p_root = behavior.at(0b000, 0b000);
    cert.zero_residuals = {behavior.at(0b010, 0b010), behavior.at(0b100, 0b100),
                           behavior.at(0b110, 0b000)};
    cert.value = centered.evaluate(behavior);

    if (cert.zero_residuals[0] > tol || cert.zero_residuals[1] > tol || cert.zero_residuals[2] > tol) {
      last_failure = "Hardy zero conditions exceeded tolerance";
      continue;
    }
    if (!(cert.value > 0.0)) {
      last_failure = "constructed correlations do not violate the inequality";
      continue;
    }
    return cert;
  }
  throw CertificationError("symmetric_state_violation failed: " + last_failure);
}

}  // namespace bellforge

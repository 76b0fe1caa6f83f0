#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"
#include "bellforge/rng.hpp"

namespace bellforge {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;

/// n-qubit pure state; qubit 0 is the most significant bit of the amplitude
/// index, matching the party convention of behaviors and functionals.
class PureState {
 public:
  PureState(int n_qubits, Amplitudes amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_ < 1) throw std::invalid_argument("state needs at least one qubit");
    if (amps_.size() != (std::size_t{1} << n_)) {
      throw std::invalid_argument("state amplitude count must be 2^n");
    }
    double norm2 = 0.0;
    for (const Complex& amp : amps_) norm2 += std::norm(amp);
    if (std::abs(norm2 - 1.0) > 1e-12) {
      throw std::invalid_argument("state is not normalized");
    }
  }

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const Amplitudes& amplitudes() const { return amps_; }
  const Complex& amplitude(std::size_t index) const { return amps_[index]; }

 private:
  int n_;
  Amplitudes amps_;
};

/// cos(theta)|0...0> - sin(theta)|1...1>.
inline PureState ghz_state(int n_qubits, double theta) {
  if (n_qubits < 2) throw std::invalid_argument("ghz_state needs at least two qubits");
  if (theta < 0.0 || theta > kPi / 4 + 1e-12) {
    throw std::invalid_argument("ghz_state requires theta in [0, pi/4]");
  }
  Amplitudes amps(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
  amps.front() = Complex(std::cos(theta), 0.0);
  amps.back() = Complex(-std::sin(theta), 0.0);
  return PureState(n_qubits, std::move(amps));
}

/// Three-qubit canonical form
///   h0|000> + h1 e^{i phi}|100> + h2|101> + h3|110> + h4|111>.
inline PureState acin_state(double h0, double h1, double h2, double h3, double h4, double phi) {
  const std::array<double, 5> h = {h0, h1, h2, h3, h4};
  double norm2 = 0.0;
  for (double v : h) {
    if (v < 0.0) throw std::invalid_argument("acin_state coefficients must be nonnegative");
    norm2 += v * v;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("acin_state coefficients must satisfy sum h_i^2 = 1");
  }
  if (phi < 0.0 || phi > kPi + 1e-12) {
    throw std::invalid_argument("acin_state requires phi in [0, pi]");
  }
  Amplitudes amps(8, Complex(0.0, 0.0));
  amps[0b000] = h0;
  amps[0b100] = h1 * Complex(std::cos(phi), std::sin(phi));
  amps[0b101] = h2;
  amps[0b110] = h3;
  amps[0b111] = h4;
  return PureState(3, std::move(amps));
}

/// Haar-uniform random pure state: normalized vector of i.i.d. complex
/// Gaussians, fully determined by the seed.
inline PureState haar_random_state(int n_qubits, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  Amplitudes amps(std::size_t{1} << n_qubits);
  double norm2 = 0.0;
  for (Complex& amp : amps) {
    amp = Complex(rng.gaussian(), rng.gaussian());
    norm2 += std::norm(amp);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& amp : amps) amp *= scale;
  return PureState(n_qubits, std::move(amps));
}

/// Rank-1 qubit projective measurement given by a polar angle and one phase:
///   outcome-0 bra: cos(alpha)<0| + e^{i delta} sin(alpha)<1|
///   outcome-1 bra: e^{-i delta} sin(alpha)<0| - cos(alpha)<1|.
/// The two bras are orthonormal for every (alpha, delta).
struct QubitMeasurement {
  double alpha = 0.0;
  double delta = 0.0;

  std::array<Complex, 2> outcome_bra(int outcome) const {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const Complex phase(std::cos(delta), std::sin(delta));
    if (outcome == 0) return {Complex(c, 0.0), phase * s};
    return {std::conj(phase) * s, Complex(-c, 0.0)};
  }

  /// Canonical (alpha, delta) for an arbitrary bra, up to global phase.
  static QubitMeasurement from_bra(const Complex& c0, const Complex& c1) {
    const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
    if (norm < 1e-300) throw std::invalid_argument("measurement bra must be nonzero");
    const double m0 = std::abs(c0) / norm;
    const double m1 = std::abs(c1) / norm;
    QubitMeasurement m;
    m.alpha = std::atan2(m1, m0);
    m.delta = (m1 < 1e-15 || m0 < 1e-15) ? 0.0 : std::arg(c1) - std::arg(c0);
    return m;
  }
};

/// One qubit measurement per party and per setting.
class MeasurementAssignment {
 public:
  MeasurementAssignment(int n_parties, std::vector<std::array<QubitMeasurement, 2>> per_party)
      : n_(n_parties), per_party_(std::move(per_party)) {
    if (per_party_.size() != static_cast<std::size_t>(n_)) {
      throw std::invalid_argument("assignment must cover every party");
    }
  }

  /// Every party uses the same two measurements.
  static MeasurementAssignment identical(int n_parties, const QubitMeasurement& setting0,
                                         const QubitMeasurement& setting1) {
    return MeasurementAssignment(
        n_parties, std::vector<std::array<QubitMeasurement, 2>>(static_cast<std::size_t>(n_parties),
                                                                {setting0, setting1}));
  }

  int n_parties() const { return n_; }
  const QubitMeasurement& at(int party, int setting) const {
    return per_party_[static_cast<std::size_t>(party)][static_cast<std::size_t>(setting)];
  }
  QubitMeasurement& at(int party, int setting) {
    return per_party_[static_cast<std::size_t>(party)][static_cast<std::size_t>(setting)];
  }

 private:
  int n_;
  std::vector<std::array<QubitMeasurement, 2>> per_party_;
};

/// Contracts one qubit with a bra, returning the (n-1)-qubit amplitudes.
inline Amplitudes apply_bra(const Amplitudes& amps, int n_qubits, int qubit,
                            const std::array<Complex, 2>& bra) {
  Amplitudes out(std::size_t{1} << (n_qubits - 1), Complex(0.0, 0.0));
  const int shift = n_qubits - 1 - qubit;
  const std::size_t low_mask = (std::size_t{1} << shift) - 1;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    const int bit = static_cast<int>((idx >> shift) & 1u);
    const std::size_t rest = ((idx >> (shift + 1)) << shift) | (idx & low_mask);
    out[rest] += bra[static_cast<std::size_t>(bit)] * amps[idx];
  }
  return out;
}

/// Born probability of one outcome vector under one setting vector,
/// by successive tensor contraction (no projectors materialized).
inline double born_probability(const PureState& state, const MeasurementAssignment& assignment,
                               std::size_t x_index, std::size_t a_index) {
  const int n = state.n_qubits();
  Amplitudes amps = state.amplitudes();
  for (int party = 0; party < n; ++party) {
    const int setting = bit_at(x_index, party, n);
    const int outcome = bit_at(a_index, party, n);
    // Always contract the leading qubit; remaining parties shift up.
    amps = apply_bra(amps, n - party, 0, assignment.at(party, setting).outcome_bra(outcome));
  }
  return std::norm(amps[0]);
}

/// Full behavior induced by the Born rule. Computes all outcomes of one
/// setting vector with a single basis change per party, then validates
/// normalization and no-signalling within check_tol.
inline Behavior behavior_from_state(const PureState& state, const MeasurementAssignment& assignment,
                                    double check_tol = 1e-12) {
  const int n = state.n_qubits();
  if (assignment.n_parties() != n) {
    throw std::invalid_argument("assignment and state party counts differ");
  }
  const std::size_t side = std::size_t{1} << n;
  std::vector<double> table(side * side, 0.0);
  for (std::size_t x = 0; x < side; ++x) {
    Amplitudes amps = state.amplitudes();
    for (int party = 0; party < n; ++party) {
      const QubitMeasurement& meas = assignment.at(party, bit_at(x, party, n));
      const std::array<Complex, 2> row0 = meas.outcome_bra(0);
      const std::array<Complex, 2> row1 = meas.outcome_bra(1);
      const int shift = n - 1 - party;
      const std::size_t step = std::size_t{1} << shift;
      for (std::size_t base = 0; base < side; base += 2 * step) {
        for (std::size_t offset = 0; offset < step; ++offset) {
          const std::size_t i0 = base + offset;
          const std::size_t i1 = i0 + step;
          const Complex v0 = amps[i0];
          const Complex v1 = amps[i1];
          amps[i0] = row0[0] * v0 + row0[1] * v1;
          amps[i1] = row1[0] * v0 + row1[1] * v1;
        }
      }
    }
    for (std::size_t a = 0; a < side; ++a) {
      table[x * side + a] = std::norm(amps[a]);
    }
  }
  Behavior behavior(n, std::move(table));
  if (!check_behavior(behavior).within(check_tol)) {
    throw std::runtime_error("behavior_from_state failed its structural self-check");
  }
  return behavior;
}

/// One fixed party: (party index, measurement, outcome).
using FixedOutcome = std::tuple<int, QubitMeasurement, int>;

/// Projects n-2 parties onto fixed measurement outcomes and returns the
/// normalized two-qubit state of the remaining parties (ascending party
/// order) together with the probability of the fixed outcomes.
inline std::pair<PureState, double> conditional_two_party_state(const PureState& state,
                                                                std::vector<FixedOutcome> fixed) {
  const int n = state.n_qubits();
  if (static_cast<int>(fixed.size()) != n - 2) {
    throw std::invalid_argument("conditional state requires exactly n-2 fixed parties");
  }
  std::vector<bool> is_fixed(static_cast<std::size_t>(n), false);
  for (const auto& [party, meas, outcome] : fixed) {
    if (party < 0 || party >= n) throw std::invalid_argument("fixed party out of range");
    if (is_fixed[static_cast<std::size_t>(party)]) {
      throw std::invalid_argument("fixed parties collide");
    }
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("fixed outcome must be a bit");
    is_fixed[static_cast<std::size_t>(party)] = true;
  }
  // Contract from the highest party index down so lower positions stay valid.
  std::sort(fixed.begin(), fixed.end(),
            [](const FixedOutcome& a, const FixedOutcome& b) { return std::get<0>(a) > std::get<0>(b); });
  Amplitudes amps = state.amplitudes();
  int remaining = n;
  for (const auto& [party, meas, outcome] : fixed) {
    amps = apply_bra(amps, remaining, party, meas.outcome_bra(outcome));
    --remaining;
  }
  double probability = 0.0;
  for (const Complex& amp : amps) probability += std::norm(amp);
  if (probability < 1e-15) {
    throw std::runtime_error("conditional state has zero probability");
  }
  const double scale = 1.0 / std::sqrt(probability);
  for (Complex& amp : amps) amp *= scale;
  return {PureState(2, std::move(amps)), probability};
}

using Mat2 = std::array<std::array<Complex, 2>, 2>;

inline std::array<Complex, 2> bra_times(const std::array<Complex, 2>& bra, const Mat2& matrix) {
  return {bra[0] * matrix[0][0] + bra[1] * matrix[1][0],
          bra[0] * matrix[0][1] + bra[1] * matrix[1][1]};
}

inline Mat2 adjoint(const Mat2& m) {
  return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

/// Result of schmidt_decompose: local rotations with
/// (rotation_a (x) rotation_b)|psi> = cos(theta)|00> + sin(theta)|11>,
/// theta in [0, pi/4].
struct SchmidtDecomposition {
  double theta = 0.0;
  Mat2 rotation_a{};
  Mat2 rotation_b{};
};

/// Schmidt decomposition of a two-qubit state via the SVD of its 2x2
/// amplitude matrix. Singular values are ordered descending, so theta is
/// unique in [0, pi/4]; product states return theta = 0.
inline SchmidtDecomposition schmidt_decompose(const PureState& state) {
  if (state.n_qubits() != 2) throw std::invalid_argument("schmidt_decompose needs a two-qubit state");
  // Amplitude matrix A[i][j] = <ij|psi>.
  const Mat2 a = {{{state.amplitude(0), state.amplitude(1)}, {state.amplitude(2), state.amplitude(3)}}};

  // Eigen-decomposition of the 2x2 Hermitian matrix A^dag A.
  const Complex m01 = std::conj(a[0][0]) * a[0][1] + std::conj(a[1][0]) * a[1][1];
  const double m00 = std::norm(a[0][0]) + std::norm(a[1][0]);
  const double m11 = std::norm(a[0][1]) + std::norm(a[1][1]);
  const double trace = m00 + m11;
  const double gap = std::sqrt(std::max(0.0, (m00 - m11) * (m00 - m11) + 4.0 * std::norm(m01)));
  const double lambda0 = 0.5 * (trace + gap);
  const double lambda1 = std::max(0.0, 0.5 * (trace - gap));
  const double sigma0 = std::sqrt(lambda0);
  const double sigma1 = std::sqrt(lambda1);

  // Right singular vectors (columns of V).
  std::array<Complex, 2> v0;
  if (std::abs(m01) < 1e-15 * std::max(1.0, trace)) {
    v0 = m00 >= m11 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
  } else {
    v0 = {m01, Complex(lambda0 - m00, 0.0)};
    const double norm = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
    v0 = {v0[0] / norm, v0[1] / norm};
  }
  const std::array<Complex, 2> v1 = {-std::conj(v0[1]), std::conj(v0[0])};

  // Left singular vectors w_i = A v_i / sigma_i.
  auto matvec = [&](const std::array<Complex, 2>& v) -> std::array<Complex, 2> {
    return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
  };
  std::array<Complex, 2> w0 = matvec(v0);
  {
    const double norm = std::sqrt(std::norm(w0[0]) + std::norm(w0[1]));
    if (norm < 1e-150) throw std::runtime_error("schmidt_decompose: zero state");
    w0 = {w0[0] / norm, w0[1] / norm};
  }
  // Normalizing A v1 makes <w1| A |v1> = |A v1| = sigma1 real nonnegative.
  std::array<Complex, 2> w1;
  if (sigma1 > 1e-12) {
    w1 = matvec(v1);
    const double norm = std::sqrt(std::norm(w1[0]) + std::norm(w1[1]));
    w1 = {w1[0] / norm, w1[1] / norm};
  } else {
    w1 = {-std::conj(w0[1]), std::conj(w0[0])};
  }

  // U_A = W^dag and U_B = V^T give U_A A U_B^T = diag(sigma0, sigma1).
  SchmidtDecomposition result;
  result.theta = std::atan2(sigma1, sigma0);
  result.rotation_a = {{{std::conj(w0[0]), std::conj(w0[1])}, {std::conj(w1[0]), std::conj(w1[1])}}};
  result.rotation_b = {{{v0[0], v1[0]}, {v0[1], v1[1]}}};
  // rotation_b above is [v0 v1] as columns = V; we need V^T.
  std::swap(result.rotation_b[0][1], result.rotation_b[1][0]);
  return result;
}

/// Applies (rotation_a (x) rotation_b) to a two-qubit state.
inline PureState apply_local_rotations(const PureState& state, const Mat2& rotation_a,
                                       const Mat2& rotation_b) {
  if (state.n_qubits() != 2) throw std::invalid_argument("local rotations expect two qubits");
  Amplitudes out(4, Complex(0.0, 0.0));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex sum(0.0, 0.0);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          sum += rotation_a[i][k] * rotation_b[j][l] * state.amplitude(static_cast<std::size_t>(2 * k + l));
        }
      }
      out[static_cast<std::size_t>(2 * i + j)] = sum;
    }
  }
  return PureState(2, std::move(out));
}

}  // namespace bellforge

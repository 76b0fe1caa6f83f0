#pragma once

#include <stdexcept>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"
#include "bellforge/rational.hpp"
#include "bellforge/strategy.hpp"

namespace bellforge {

/// PR-box relabeling: P(ab|xy) = 1/2 iff a + b = xy + alpha*x + beta*y + gamma (mod 2).
/// (alpha, beta, gamma) = (0,0,0) is the canonical PR box.
template <typename T>
BasicBehavior<T> pr_box_variant(int alpha, int beta, int gamma) {
  std::vector<T> table(16, T{});
  const T half = T(1) / T(2);
  for (std::size_t xy = 0; xy < 4; ++xy) {
    int x = bit_at(xy, 0, 2);
    int y = bit_at(xy, 1, 2);
    for (std::size_t ab = 0; ab < 4; ++ab) {
      int a = bit_at(ab, 0, 2);
      int b = bit_at(ab, 1, 2);
      if (((a + b) & 1) == ((x * y + alpha * x + beta * y + gamma) & 1)) {
        table[xy * 4 + ab] = half;
      }
    }
  }
  return BasicBehavior<T>(2, std::move(table));
}

template <typename T>
BasicBehavior<T> pr_box() {
  return pr_box_variant<T>(0, 0, 0);
}

/// The n-party no-signalling box: P(a|x) = 1/2^{n-1} iff the parity of the
/// outcomes equals the parity of all pairwise setting products, else 0.
/// Reduces to the PR box at n = 2; every single-party marginal is (1/2, 1/2).
template <typename T>
BasicBehavior<T> ns_box(int n_parties) {
  if (n_parties < 2) throw std::invalid_argument("ns_box needs at least two parties");
  const std::size_t side = std::size_t{1} << n_parties;
  const T weight = T(1) / T(static_cast<std::int64_t>(side >> 1));
  std::vector<T> table(side * side, T{});
  for (std::size_t x = 0; x < side; ++x) {
    int target = 0;
    for (int i = 0; i < n_parties; ++i) {
      for (int j = i + 1; j < n_parties; ++j) {
        target ^= bit_at(x, i, n_parties) & bit_at(x, j, n_parties);
      }
    }
    for (std::size_t a = 0; a < side; ++a) {
      int parity = 0;
      for (int i = 0; i < n_parties; ++i) parity ^= bit_at(a, i, n_parties);
      if (parity == target) table[x * side + a] = weight;
    }
  }
  return BasicBehavior<T>(n_parties, std::move(table));
}

/// All 24 extreme points of the two-party binary no-signalling polytope:
/// the 16 deterministic behaviors followed by the 8 PR-box relabelings in
/// (alpha, beta, gamma) lexicographic order. Entries are exact rationals;
/// the test suite re-verifies the list instead of trusting it.
inline std::vector<RationalBehavior> bipartite_ns_vertices() {
  std::vector<RationalBehavior> vertices;
  vertices.reserve(24);
  for (std::uint64_t i = 0; i < deterministic_count(2); ++i) {
    vertices.push_back(DeterministicStrategy::from_index(2, i).to_behavior<Rational>());
  }
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      for (int gamma = 0; gamma < 2; ++gamma) {
        vertices.push_back(pr_box_variant<Rational>(alpha, beta, gamma));
      }
    }
  }
  return vertices;
}

}  // namespace bellforge

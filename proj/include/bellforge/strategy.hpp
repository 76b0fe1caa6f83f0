#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"

namespace bellforge {

/// A fully local deterministic strategy: each party maps its setting bit to
/// an outcome bit. Exactly 4^n of these exist for n parties; together with
/// convexity they carry every local bound computed in this library.
class DeterministicStrategy {
 public:
  DeterministicStrategy(int n_parties, std::vector<std::array<std::uint8_t, 2>> outputs)
      : n_(n_parties), outputs_(std::move(outputs)) {
    if (n_ < 1 || outputs_.size() != static_cast<std::size_t>(n_)) {
      throw std::invalid_argument("strategy outputs must cover every party");
    }
  }

  /// Decodes a strategy from its index; bits (2i, 2i+1) hold party i's
  /// responses to settings 0 and 1. Index order is the canonical order used
  /// for witness tie-breaking.
  static DeterministicStrategy from_index(int n_parties, std::uint64_t index) {
    std::vector<std::array<std::uint8_t, 2>> outputs(static_cast<std::size_t>(n_parties));
    for (int i = 0; i < n_parties; ++i) {
      outputs[static_cast<std::size_t>(i)][0] = (index >> (2 * i)) & 1u;
      outputs[static_cast<std::size_t>(i)][1] = (index >> (2 * i + 1)) & 1u;
    }
    return DeterministicStrategy(n_parties, std::move(outputs));
  }

  static DeterministicStrategy all_ones(int n_parties) {
    return DeterministicStrategy(
        n_parties, std::vector<std::array<std::uint8_t, 2>>(static_cast<std::size_t>(n_parties), {1, 1}));
  }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int i = 0; i < n_; ++i) {
      idx |= static_cast<std::uint64_t>(outputs_[static_cast<std::size_t>(i)][0]) << (2 * i);
      idx |= static_cast<std::uint64_t>(outputs_[static_cast<std::size_t>(i)][1]) << (2 * i + 1);
    }
    return idx;
  }

  int n_parties() const { return n_; }
  std::uint8_t output(int party, int setting) const {
    return outputs_[static_cast<std::size_t>(party)][static_cast<std::size_t>(setting)];
  }

  /// Outcome index produced for a packed setting index.
  std::size_t response(std::size_t x_index) const {
    std::size_t a = 0;
    for (int i = 0; i < n_; ++i) {
      a |= static_cast<std::size_t>(output(i, bit_at(x_index, i, n_))) << (n_ - 1 - i);
    }
    return a;
  }

  template <typename T>
  BasicBehavior<T> to_behavior() const {
    std::size_t side = std::size_t{1} << n_;
    std::vector<T> table(side * side, T{});
    for (std::size_t x = 0; x < side; ++x) {
      table[x * side + response(x)] = T(1);
    }
    return BasicBehavior<T>(n_, std::move(table));
  }

  friend bool operator==(const DeterministicStrategy& a, const DeterministicStrategy& b) {
    return a.n_ == b.n_ && a.outputs_ == b.outputs_;
  }

 private:
  int n_;
  std::vector<std::array<std::uint8_t, 2>> outputs_;
};

inline std::uint64_t deterministic_count(int n_parties) {
  return std::uint64_t{1} << (2 * n_parties);
}

inline std::vector<DeterministicStrategy> enumerate_deterministic(int n_parties) {
  if (n_parties < 1) throw std::invalid_argument("need at least one party");
  if (n_parties > 12) throw std::invalid_argument("deterministic enumeration capped at 12 parties");
  std::vector<DeterministicStrategy> all;
  all.reserve(deterministic_count(n_parties));
  for (std::uint64_t i = 0; i < deterministic_count(n_parties); ++i) {
    all.push_back(DeterministicStrategy::from_index(n_parties, i));
  }
  return all;
}

}  // namespace bellforge

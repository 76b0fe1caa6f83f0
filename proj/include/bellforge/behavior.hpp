#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bellforge/bits.hpp"
#include "bellforge/rational.hpp"

namespace bellforge {

/// Default cap on the number of parties for dense tables (4^n entries).
inline constexpr int kDefaultPartyCap = 10;

namespace detail {
inline double abs_value(double v) { return std::abs(v); }
inline Rational abs_value(const Rational& v) { return v.abs(); }
template <typename T>
inline T one() {
  return T(1);
}
}  // namespace detail

template <typename T>
struct ValidationReport {
  T normalization_residual{};   // max over settings of |sum_a P(a|x) - 1|
  T min_entry{};                // smallest table entry
  T no_signalling_residual{};   // max marginal mismatch across any party's settings

  bool within(double tol) const {
    return to_double(normalization_residual) <= tol && to_double(min_entry) >= -tol &&
           to_double(no_signalling_residual) <= tol;
  }

 private:
  static double to_double(double v) { return v; }
  static double to_double(const Rational& v) { return v.to_double(); }
};

/// Full conditional distribution P(a-vector | x-vector) for n parties with
/// binary settings and outcomes, stored dense: side = 2^n rows (settings) by
/// 2^n columns (outcomes).
///
/// Instantiated with Rational for exact classical/no-signalling objects and
/// with double for quantum behaviors. The two never convert implicitly;
/// to_double_behavior() below is the one explicit bridge.
template <typename T>
class BasicBehavior {
 public:
  BasicBehavior(int n_parties, std::vector<T> table, int party_cap = kDefaultPartyCap)
      : n_(n_parties), table_(std::move(table)) {
    if (n_ < 1) throw std::invalid_argument("behavior needs at least one party");
    if (n_ > party_cap) throw std::invalid_argument("behavior exceeds party cap");
    if (table_.size() != size()) {
      throw std::invalid_argument("behavior table incomplete: expected 4^n entries");
    }
  }

  static BasicBehavior uniform(int n_parties) {
    std::size_t side = std::size_t{1} << n_parties;
    std::vector<T> table(side * side, T(1) / T(static_cast<std::int64_t>(side)));
    return BasicBehavior(n_parties, std::move(table));
  }

  int n_parties() const { return n_; }
  std::size_t side() const { return std::size_t{1} << n_; }
  std::size_t size() const { return side() * side(); }

  const T& at(std::size_t x_index, std::size_t a_index) const {
    return table_[x_index * side() + a_index];
  }
  T& at(std::size_t x_index, std::size_t a_index) { return table_[x_index * side() + a_index]; }

  const std::vector<T>& table() const { return table_; }

  /// Marginal of one party: P(a | x) for the given party with all other
  /// parties summed out at the given full setting vector.
  T single_party_marginal(int party, std::size_t x_index, int outcome) const {
    T total{};
    for (std::size_t a = 0; a < side(); ++a) {
      if (bit_at(a, party, n_) == outcome) total += at(x_index, a);
    }
    return total;
  }

  friend bool operator==(const BasicBehavior& lhs, const BasicBehavior& rhs) {
    return lhs.n_ == rhs.n_ && lhs.table_ == rhs.table_;
  }

 private:
  int n_;
  std::vector<T> table_;
};

using Behavior = BasicBehavior<double>;
using RationalBehavior = BasicBehavior<Rational>;

/// Checks normalization, positivity, and the no-signalling marginals.
/// Residuals are exact when T is Rational.
template <typename T>
ValidationReport<T> check_behavior(const BasicBehavior<T>& b) {
  ValidationReport<T> report;
  const int n = b.n_parties();
  const std::size_t side = b.side();

  report.min_entry = b.at(0, 0);
  for (std::size_t x = 0; x < side; ++x) {
    T sum{};
    for (std::size_t a = 0; a < side; ++a) {
      const T& p = b.at(x, a);
      sum += p;
      if (p < report.min_entry) report.min_entry = p;
    }
    T residual = detail::abs_value(sum - detail::one<T>());
    if (residual > report.normalization_residual) report.normalization_residual = residual;
  }

  // For every party, the outcome distribution of the others must not depend
  // on that party's setting.
  const std::size_t half = side >> 1;
  for (int party = 0; party < n; ++party) {
    for (std::size_t x_rest = 0; x_rest < half; ++x_rest) {
      std::size_t x0 = insert_bit(x_rest, party, n, 0);
      std::size_t x1 = insert_bit(x_rest, party, n, 1);
      for (std::size_t a_rest = 0; a_rest < half; ++a_rest) {
        T m0{};
        T m1{};
        for (int outcome = 0; outcome < 2; ++outcome) {
          std::size_t a = insert_bit(a_rest, party, n, outcome);
          m0 += b.at(x0, a);
          m1 += b.at(x1, a);
        }
        T residual = detail::abs_value(m0 - m1);
        if (residual > report.no_signalling_residual) report.no_signalling_residual = residual;
      }
    }
  }
  return report;
}

inline Behavior to_double_behavior(const RationalBehavior& b) {
  std::vector<double> table;
  table.reserve(b.size());
  for (const Rational& v : b.table()) table.push_back(v.to_double());
  return Behavior(b.n_parties(), std::move(table));
}

/// Convex mixture; weights must sum to one for the result to be a behavior.
template <typename T>
BasicBehavior<T> mix_behaviors(const std::vector<std::pair<T, BasicBehavior<T>>>& weighted) {
  if (weighted.empty()) throw std::invalid_argument("mix_behaviors needs at least one input");
  const int n = weighted.front().second.n_parties();
  std::vector<T> table(weighted.front().second.size(), T{});
  for (const auto& [weight, behavior] : weighted) {
    if (behavior.n_parties() != n) throw std::invalid_argument("mixing behaviors of unequal size");
    for (std::size_t i = 0; i < table.size(); ++i) {
      table[i] += weight * behavior.table()[i];
    }
  }
  return BasicBehavior<T>(n, std::move(table));
}

}  // namespace bellforge

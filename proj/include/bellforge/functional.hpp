#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"
#include "bellforge/rational.hpp"
#include "bellforge/strategy.hpp"

namespace bellforge {

struct TermKey {
  std::uint32_t x = 0;
  std::uint32_t a = 0;
  auto operator<=>(const TermKey&) const = default;
};

struct FunctionalMeta {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;

  void set(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  std::string get(const std::string& key) const {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    return {};
  }
};

/// Sparse Bell functional sum_{x,a} c_{x,a} P(a|x) with exact rational
/// coefficients and a declared bound (0 for every family built here; the
/// bound certifier checks it rather than assuming it).
///
/// Identical (x, a) keys always merge on insertion, so two functionals are
/// equal as maps exactly when their coefficient maps agree.
class BellFunctional {
 public:
  explicit BellFunctional(int n_parties) : n_(n_parties) {
    if (n_ < 1) throw std::invalid_argument("functional needs at least one party");
    if (n_ > 31) throw std::invalid_argument("functional party count too large");
  }

  int n_parties() const { return n_; }
  std::size_t side() const { return std::size_t{1} << n_; }

  void add_term(std::size_t x_index, std::size_t a_index, const Rational& coefficient) {
    if (x_index >= side() || a_index >= side()) {
      throw std::invalid_argument("functional term index out of range");
    }
    if (coefficient.is_zero()) return;
    TermKey key{static_cast<std::uint32_t>(x_index), static_cast<std::uint32_t>(a_index)};
    auto [it, inserted] = terms_.try_emplace(key, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add_term(const Bits& x, const Bits& a, const Rational& coefficient) {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(a.size()) != n_) {
      throw std::invalid_argument("functional term vectors must have length n");
    }
    add_term(pack_bits(x), pack_bits(a), coefficient);
  }

  Rational coefficient(std::size_t x_index, std::size_t a_index) const {
    auto it = terms_.find(TermKey{static_cast<std::uint32_t>(x_index), static_cast<std::uint32_t>(a_index)});
    return it == terms_.end() ? Rational() : it->second;
  }

  const std::map<TermKey, Rational>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  const Rational& bound() const { return bound_; }
  void set_bound(const Rational& bound) { bound_ = bound; }

  const FunctionalMeta& meta() const { return meta_; }
  FunctionalMeta& meta() { return meta_; }

  template <typename T>
  T evaluate(const BasicBehavior<T>& behavior) const {
    if (behavior.n_parties() != n_) {
      throw std::invalid_argument("functional and behavior party counts differ");
    }
    T total{};
    for (const auto& [key, coefficient] : terms_) {
      total += coefficient_as<T>(coefficient) * behavior.at(key.x, key.a);
    }
    return total;
  }

  /// Exact value on a deterministic strategy without materializing its table.
  Rational evaluate_strategy(const DeterministicStrategy& strategy) const {
    if (strategy.n_parties() != n_) {
      throw std::invalid_argument("functional and strategy party counts differ");
    }
    Rational total;
    for (const auto& [key, coefficient] : terms_) {
      if (strategy.response(key.x) == key.a) total += coefficient;
    }
    return total;
  }

  /// Coefficient-map equality (bound and meta ignored).
  bool same_terms(const BellFunctional& other) const {
    return n_ == other.n_ && terms_ == other.terms_;
  }

 private:
  template <typename T>
  static T coefficient_as(const Rational& c) {
    if constexpr (std::is_same_v<T, Rational>) {
      return c;
    } else {
      return c.to_double();
    }
  }

  int n_;
  std::map<TermKey, Rational> terms_;
  Rational bound_;
  FunctionalMeta meta_;
};

}  // namespace bellforge

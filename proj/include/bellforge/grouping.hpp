#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"

namespace bellforge {

/// An ordered partition of the parties {0..n-1} into m disjoint non-empty
/// groups. Groups are kept sorted internally and ordered by smallest member.
class Grouping {
 public:
  Grouping(int n_parties, std::vector<std::vector<int>> groups)
      : n_(n_parties), groups_(std::move(groups)) {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::size_t covered = 0;
    for (auto& group : groups_) {
      if (group.empty()) throw std::invalid_argument("grouping contains an empty group");
      std::sort(group.begin(), group.end());
      for (int party : group) {
        if (party < 0 || party >= n_) throw std::invalid_argument("grouping party out of range");
        if (seen[static_cast<std::size_t>(party)]) {
          throw std::invalid_argument("grouping groups overlap");
        }
        seen[static_cast<std::size_t>(party)] = true;
        ++covered;
      }
    }
    if (covered != static_cast<std::size_t>(n_)) {
      throw std::invalid_argument("grouping does not cover every party");
    }
    std::sort(groups_.begin(), groups_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  int n_parties() const { return n_; }
  int m() const { return static_cast<int>(groups_.size()); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

 private:
  int n_;
  std::vector<std::vector<int>> groups_;
};

/// Joint behavior of independent group behaviors under the grouping's index
/// embedding. Part index sets must be sorted ascending; part party k is the
/// k-th listed global party. No-signalling of the parts carries over to the
/// product.
template <typename T>
BasicBehavior<T> product_behavior(int n_parties,
                                  const std::vector<std::pair<BasicBehavior<T>, std::vector<int>>>& parts) {
  std::vector<std::vector<int>> index_sets;
  index_sets.reserve(parts.size());
  for (const auto& [behavior, indices] : parts) {
    if (!std::is_sorted(indices.begin(), indices.end())) {
      throw std::invalid_argument("product part indices must be ascending");
    }
    if (behavior.n_parties() != static_cast<int>(indices.size())) {
      throw std::invalid_argument("product part size does not match its index set");
    }
    index_sets.push_back(indices);
  }
  Grouping grouping(n_parties, index_sets);  // validates disjoint cover
  (void)grouping;

  const std::size_t side = std::size_t{1} << n_parties;
  std::vector<T> table(side * side, T{});
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t a = 0; a < side; ++a) {
      T value(1);
      for (const auto& [behavior, indices] : parts) {
        std::size_t xg = 0;
        std::size_t ag = 0;
        for (int party : indices) {
          xg = (xg << 1) | static_cast<std::size_t>(bit_at(x, party, n_parties));
          ag = (ag << 1) | static_cast<std::size_t>(bit_at(a, party, n_parties));
        }
        value *= behavior.at(xg, ag);
        if (value == T{}) break;
      }
      table[x * side + a] = value;
    }
  }
  return BasicBehavior<T>(n_parties, std::move(table));
}

}  // namespace bellforge

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellforge/bits.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/rational.hpp"

namespace bellforge {

/// A seed is a functional in the canonical form
///   P(0...0|0...0) - sum of nonnegative-weighted probabilities,
/// whose relevant classical bound is 0. Dropping the root term leaves a
/// functional that is nonpositive on every probability distribution, which is
/// the property all the n-party constructions below lean on.
struct Seed {
  BellFunctional functional;
  int m() const { return functional.n_parties(); }
};

class SeedRejection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts a functional iff the coefficient at (0,0) is exactly +1 and every
/// other coefficient is <= 0. Bound certification is a separate step (see
/// bounds.hpp); this validates the algebraic form only.
inline Seed validate_seed(const BellFunctional& f) {
  if (f.coefficient(0, 0) != Rational(1)) {
    throw SeedRejection("seed root coefficient at (0|0) must be exactly 1, found " +
                        f.coefficient(0, 0).str());
  }
  for (const auto& [key, coefficient] : f.terms()) {
    if (key.x == 0 && key.a == 0) continue;
    if (coefficient > Rational(0)) {
      throw SeedRejection("seed has positive non-root coefficient " + coefficient.str() +
                          " at x=" + std::to_string(key.x) + " a=" + std::to_string(key.a));
    }
  }
  return Seed{f};
}

/// CHSH variant P(00|00) - P(01|01) - P(10|10) - P(00|11) <= 0.
inline Seed chsh_variant() {
  BellFunctional f(2);
  f.add_term(Bits{0, 0}, Bits{0, 0}, 1);
  f.add_term(Bits{0, 1}, Bits{0, 1}, -1);
  f.add_term(Bits{1, 0}, Bits{1, 0}, -1);
  f.add_term(Bits{1, 1}, Bits{0, 0}, -1);
  f.meta().family = "chsh";
  return Seed{f};
}

/// Tilted CHSH: the variant above minus (beta/2) * P_{A1}(1|x1=0). The
/// marginal is materialized at x2 = 0; on no-signalling behaviors the choice
/// of x2 is immaterial.
inline Seed tilted_chsh(const Rational& beta) {
  if (beta < Rational(0)) throw std::invalid_argument("tilted_chsh requires beta >= 0");
  Seed seed = chsh_variant();
  BellFunctional& f = seed.functional;
  const Rational weight = -beta / Rational(2);
  f.add_term(Bits{0, 0}, Bits{1, 0}, weight);
  f.add_term(Bits{0, 0}, Bits{1, 1}, weight);
  f.meta().family = "tilted-chsh";
  f.meta().set("beta", beta.str());
  return validate_seed(f);
}

/// Tripartite seed (class 5): seven terms, biseparable bound 0.
inline Seed tripartite_seed() {
  BellFunctional f(3);
  f.add_term(Bits{0, 0, 0}, Bits{0, 0, 0}, 1);
  f.add_term(Bits{1, 1, 1}, Bits{0, 1, 0}, -1);
  f.add_term(Bits{0, 1, 1}, Bits{0, 0, 0}, -1);
  f.add_term(Bits{0, 0, 1}, Bits{0, 0, 1}, -1);
  f.add_term(Bits{1, 1, 0}, Bits{1, 0, 0}, -1);
  f.add_term(Bits{0, 1, 0}, Bits{0, 1, 0}, -1);
  f.add_term(Bits{1, 0, 0}, Bits{1, 0, 0}, -1);
  f.meta().family = "tripartite-seed";
  return Seed{f};
}

/// Lifts a functional to n parties: original parties keep their indices, each
/// added party is pinned to a fixed (setting, outcome), default (0, 0).
/// Coefficients are unchanged.
inline BellFunctional lift(const BellFunctional& f, int n_parties,
                           const std::map<int, std::pair<int, int>>& fixed = {}) {
  const int m = f.n_parties();
  if (n_parties < m) throw std::invalid_argument("lift target has fewer parties than the source");
  for (const auto& [party, sv] : fixed) {
    if (party < m || party >= n_parties) {
      throw std::invalid_argument("lift fixed party collides with source parties or is out of range");
    }
    if (sv.first < 0 || sv.first > 1 || sv.second < 0 || sv.second > 1) {
      throw std::invalid_argument("lift fixed setting/outcome must be bits");
    }
  }
  BellFunctional lifted(n_parties);
  for (const auto& [key, coefficient] : f.terms()) {
    std::size_t x = static_cast<std::size_t>(key.x) << (n_parties - m);
    std::size_t a = static_cast<std::size_t>(key.a) << (n_parties - m);
    for (const auto& [party, sv] : fixed) {
      x = with_bit(x, party, n_parties, sv.first);
      a = with_bit(a, party, n_parties, sv.second);
    }
    lifted.add_term(x, a, coefficient);
  }
  lifted.set_bound(f.bound());
  lifted.meta() = f.meta();
  return lifted;
}

/// Places seed party k at positions[k] inside an n-party functional; all
/// remaining parties are pinned to (0, 0). Generalizes lift() to arbitrary
/// embeddings, which the family builders need.
inline BellFunctional embed_seed(const BellFunctional& f, int n_parties,
                                 const std::vector<int>& positions) {
  const int m = f.n_parties();
  if (static_cast<int>(positions.size()) != m) {
    throw std::invalid_argument("embedding needs one position per seed party");
  }
  std::vector<bool> used(static_cast<std::size_t>(n_parties), false);
  for (int p : positions) {
    if (p < 0 || p >= n_parties) throw std::invalid_argument("embedding position out of range");
    if (used[static_cast<std::size_t>(p)]) throw std::invalid_argument("embedding positions collide");
    used[static_cast<std::size_t>(p)] = true;
  }
  BellFunctional embedded(n_parties);
  for (const auto& [key, coefficient] : f.terms()) {
    std::size_t x = 0;
    std::size_t a = 0;
    for (int k = 0; k < m; ++k) {
      x = with_bit(x, positions[static_cast<std::size_t>(k)], n_parties, bit_at(key.x, k, m));
      a = with_bit(a, positions[static_cast<std::size_t>(k)], n_parties, bit_at(key.a, k, m));
    }
    embedded.add_term(x, a, coefficient);
  }
  return embedded;
}

namespace detail {

inline void subsets_of_size(int n, int k, std::vector<int>& scratch,
                            std::vector<std::vector<int>>& out, int start = 0) {
  if (static_cast<int>(scratch.size()) == k) {
    out.push_back(scratch);
    return;
  }
  for (int i = start; i <= n - (k - static_cast<int>(scratch.size())); ++i) {
    scratch.push_back(i);
    subsets_of_size(n, k, scratch, out, i + 1);
    scratch.pop_back();
  }
}

inline std::vector<std::vector<int>> all_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> scratch;
  subsets_of_size(n, k, scratch, out);
  return out;
}

}  // namespace detail

/// Symmetric family: one embedded seed copy per size-m subset of the parties,
/// minus choose(n-1, m) root terms. For the CHSH seed this is the
/// permutation-invariant witness of genuine multipartite nonlocality.
inline BellFunctional build_symmetric(const Seed& seed, int n_parties) {
  const int m = seed.m();
  if (n_parties <= m) throw std::invalid_argument("build_symmetric requires n > seed party count");
  BellFunctional f(n_parties);
  for (const auto& subset : detail::all_subsets(n_parties, m)) {
    const BellFunctional copy = embed_seed(seed.functional, n_parties, subset);
    for (const auto& [key, coefficient] : copy.terms()) f.add_term(key.x, key.a, coefficient);
  }
  f.add_term(0, 0, Rational(-choose(n_parties - 1, m)));
  f.set_bound(0);
  f.meta().family = "sym";
  f.meta().set("seed", seed.functional.meta().family);
  f.meta().set("n", std::to_string(n_parties));
  return f;
}

/// Centered family: the seed joins a fixed center of m-1 parties with each
/// remaining party in turn, minus (n-m) root terms. Seed party order is the
/// center order followed by the free party.
inline BellFunctional build_centered(const Seed& seed, int n_parties, std::vector<int> center) {
  const int m = seed.m();
  if (n_parties <= m) throw std::invalid_argument("build_centered requires n > seed party count");
  if (static_cast<int>(center.size()) != m - 1) {
    throw std::invalid_argument("center must contain exactly m-1 parties");
  }
  std::vector<bool> in_center(static_cast<std::size_t>(n_parties), false);
  for (int p : center) {
    if (p < 0 || p >= n_parties) throw std::invalid_argument("center party out of range");
    if (in_center[static_cast<std::size_t>(p)]) throw std::invalid_argument("center parties collide");
    in_center[static_cast<std::size_t>(p)] = true;
  }
  BellFunctional f(n_parties);
  for (int j = 0; j < n_parties; ++j) {
    if (in_center[static_cast<std::size_t>(j)]) continue;
    std::vector<int> positions = center;
    positions.push_back(j);
    const BellFunctional copy = embed_seed(seed.functional, n_parties, positions);
    for (const auto& [key, coefficient] : copy.terms()) f.add_term(key.x, key.a, coefficient);
  }
  f.add_term(0, 0, Rational(-(n_parties - m)));
  f.set_bound(0);
  f.meta().family = "centered";
  f.meta().set("seed", seed.functional.meta().family);
  f.meta().set("n", std::to_string(n_parties));
  return f;
}

/// Three-parameter tripartite family: mu-weighted lifted CHSH copies on the
/// pairs (0,1), (0,2), (1,2) minus one root term. Nontrivial only when
/// mu12 + mu13 + mu23 > 1; outside that region the functional is nonpositive
/// on every distribution, so the builder flags it instead of rejecting.
inline BellFunctional build_mu_family(const Rational& mu12, const Rational& mu13,
                                      const Rational& mu23) {
  for (const Rational& mu : {mu12, mu13, mu23}) {
    if (mu < Rational(0) || mu > Rational(1)) {
      throw std::invalid_argument("mu weights must lie in [0, 1]");
    }
  }
  const Seed seed = chsh_variant();
  BellFunctional f(3);
  const std::vector<std::pair<std::vector<int>, Rational>> copies = {
      {{0, 1}, mu12}, {{0, 2}, mu13}, {{1, 2}, mu23}};
  for (const auto& [positions, mu] : copies) {
    const BellFunctional copy = embed_seed(seed.functional, 3, positions);
    for (const auto& [key, coefficient] : copy.terms()) f.add_term(key.x, key.a, mu * coefficient);
  }
  f.add_term(0, 0, Rational(-1));
  f.set_bound(0);
  f.meta().family = "mu";
  f.meta().set("mu12", mu12.str());
  f.meta().set("mu13", mu13.str());
  f.meta().set("mu23", mu23.str());
  if (mu12 + mu13 + mu23 <= Rational(1)) f.meta().set("trivial_warning", "1");
  return f;
}

enum class MSeparableVariant { Symmetric, Centered };

/// m-way nonlocality witnesses from a two-party seed: the symmetric variant
/// subtracts choose(n+1-m, 2) root terms, the centered one (n-m).
inline BellFunctional build_m_separable(const Seed& seed, int n_parties, int m_groups,
                                        MSeparableVariant variant) {
  if (seed.m() != 2) throw std::invalid_argument("m-separable families use a two-party seed");
  if (m_groups < 2 || m_groups >= n_parties) {
    throw std::invalid_argument("m-separable families require 2 <= m < n");
  }
  BellFunctional f(n_parties);
  if (variant == MSeparableVariant::Symmetric) {
    for (const auto& subset : detail::all_subsets(n_parties, 2)) {
      const BellFunctional copy = embed_seed(seed.functional, n_parties, subset);
      for (const auto& [key, coefficient] : copy.terms()) f.add_term(key.x, key.a, coefficient);
    }
    f.add_term(0, 0, Rational(-choose(n_parties + 1 - m_groups, 2)));
    f.meta().family = "msep-sym";
  } else {
    for (int j = 1; j < n_parties; ++j) {
      const BellFunctional copy = embed_seed(seed.functional, n_parties, {0, j});
      for (const auto& [key, coefficient] : copy.terms()) f.add_term(key.x, key.a, coefficient);
    }
    f.add_term(0, 0, Rational(-(n_parties - m_groups)));
    f.meta().family = "msep-centered";
  }
  f.set_bound(0);
  f.meta().set("seed", seed.functional.meta().family);
  f.meta().set("n", std::to_string(n_parties));
  f.meta().set("m", std::to_string(m_groups));
  return f;
}

/// Recursive form of the symmetric family:
///   R(n) = 1/(n-2) * sum_i [R(n-1) with party i pinned to (0,0)] - P(0|0),
/// grounded at the CHSH seed for n = 2. Coefficient-map equal to
/// build_symmetric(chsh, n); kept as an independent construction so the
/// equality can be tested exactly.
inline BellFunctional build_recursive_symmetric(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("recursive symmetric family starts at n = 3");
  BellFunctional level = chsh_variant().functional;
  for (int n = 3; n <= n_parties; ++n) {
    BellFunctional next(n);
    const Rational prefactor = Rational(1, n - 2);
    for (int skip = 0; skip < n; ++skip) {
      std::vector<int> positions;
      positions.reserve(static_cast<std::size_t>(n - 1));
      for (int p = 0; p < n; ++p) {
        if (p != skip) positions.push_back(p);
      }
      const BellFunctional copy = embed_seed(level, n, positions);
      for (const auto& [key, coefficient] : copy.terms()) {
        next.add_term(key.x, key.a, prefactor * coefficient);
      }
    }
    next.add_term(0, 0, Rational(-1));
    level = next;
  }
  level.set_bound(0);
  level.meta().family = "recursive-sym";
  level.meta().set("n", std::to_string(n_parties));
  return level;
}

}  // namespace bellforge

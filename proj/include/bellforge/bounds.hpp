#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellforge/behavior.hpp"
#include "bellforge/families.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/grouping.hpp"
#include "bellforge/ns_boxes.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/rng.hpp"
#include "bellforge/strategy.hpp"

namespace bellforge {

enum class BoundKind {
  Local,                 // exact max over all deterministic strategies
  BiseparableTripartite, // exact max over the 288 extremal hybrid products (n = 3)
  GroupedSampled,        // empirical max over sampled m-separable products
};

/// Certified bound together with a witness that re-evaluates to the value.
/// Exact kinds carry rational values and rational witnesses; the sampled
/// kind is an inner approximation used as falsification evidence.
struct BoundCertificate {
  BoundKind kind = BoundKind::Local;
  Rational value;
  double value_float = 0.0;
  std::optional<DeterministicStrategy> witness_strategy;
  std::optional<RationalBehavior> witness_rational;
  std::optional<Behavior> witness_double;
  std::string witness_note;
  std::uint64_t sample_count = 0;
  std::uint64_t rng_seed = 0;
};

/// Exact local bound by enumeration of all 4^n deterministic strategies;
/// convexity of the local set makes the deterministic maximum the bound.
/// Reports the first (smallest-index) maximizer.
inline BoundCertificate local_bound(const BellFunctional& f, int party_cap = 8) {
  const int n = f.n_parties();
  if (n > party_cap) throw std::invalid_argument("local_bound: party count above enumeration cap");
  BoundCertificate cert;
  cert.kind = BoundKind::Local;
  bool first = true;
  for (std::uint64_t index = 0; index < deterministic_count(n); ++index) {
    const DeterministicStrategy strategy = DeterministicStrategy::from_index(n, index);
    const Rational value = f.evaluate_strategy(strategy);
    if (first || value > cert.value) {
      first = false;
      cert.value = value;
      cert.witness_strategy = strategy;
    }
  }
  cert.value_float = cert.value.to_double();
  cert.witness_rational = cert.witness_strategy->to_behavior<Rational>();
  cert.witness_note = "deterministic strategy index " + std::to_string(cert.witness_strategy->index());
  return cert;
}

/// Exact biseparable bound for n = 3: the hybrid set is the convex hull of
/// products of a bipartite no-signalling behavior with a single-party
/// behavior, so the maximum is attained on the 3 bipartitions x 24 NS
/// vertices x 4 deterministic single-party strategies.
inline BoundCertificate biseparable_bound_tripartite(const BellFunctional& f) {
  if (f.n_parties() != 3) {
    throw std::invalid_argument("biseparable_bound_tripartite requires a tripartite functional");
  }
  const std::vector<RationalBehavior> vertices = bipartite_ns_vertices();
  const std::vector<std::pair<std::vector<int>, int>> partitions = {
      {{0, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 0}};

  BoundCertificate cert;
  cert.kind = BoundKind::BiseparableTripartite;
  bool first = true;
  for (std::size_t partition = 0; partition < partitions.size(); ++partition) {
    const auto& [pair_indices, singleton] = partitions[partition];
    for (std::size_t vertex = 0; vertex < vertices.size(); ++vertex) {
      for (std::uint64_t s = 0; s < deterministic_count(1); ++s) {
        const RationalBehavior single = DeterministicStrategy::from_index(1, s).to_behavior<Rational>();
        const RationalBehavior product =
            product_behavior<Rational>(3, {{vertices[vertex], pair_indices}, {single, {singleton}}});
        const Rational value = f.evaluate(product);
        if (first || value > cert.value) {
          first = false;
          cert.value = value;
          cert.witness_rational = product;
          cert.witness_note = "partition " + std::to_string(partition) + ", vertex " +
                              std::to_string(vertex) + ", singleton strategy " + std::to_string(s);
        }
      }
    }
  }
  cert.value_float = cert.value.to_double();
  return cert;
}

/// Certifies the bound a seed claims: the local bound for two-party seeds,
/// the biseparable bound for three-party ones. Both must be 0 for the
/// family constructions to witness anything.
inline BoundCertificate certify_seed(const Seed& seed) {
  if (seed.m() == 2) return local_bound(seed.functional);
  if (seed.m() == 3) return biseparable_bound_tripartite(seed.functional);
  throw std::invalid_argument("seed certification covers two- and three-party seeds only");
}

/// Number of intra-group pairs: the count of lifted two-party seed copies a
/// grouping can in principle make positive.
inline std::int64_t count_potentially_positive_pairs(const Grouping& grouping) {
  std::int64_t pairs = 0;
  for (const auto& group : grouping.groups()) {
    pairs += choose(static_cast<int>(group.size()), 2);
  }
  return pairs;
}

namespace detail {

inline RationalBehavior random_single_party_behavior(Rng& rng, bool mixture) {
  if (!mixture) {
    return DeterministicStrategy::from_index(1, rng.below(4)).to_behavior<Rational>();
  }
  // Dirichlet-style weights over the four deterministic points, materialized
  // as small rationals so the product stays exact until final evaluation.
  std::vector<std::pair<Rational, RationalBehavior>> weighted;
  std::int64_t total = 0;
  std::vector<std::int64_t> raw(4);
  for (auto& r : raw) {
    r = 1 + static_cast<std::int64_t>(rng.below(97));
    total += r;
  }
  for (int i = 0; i < 4; ++i) {
    weighted.emplace_back(Rational(raw[static_cast<std::size_t>(i)], total),
                          DeterministicStrategy::from_index(1, static_cast<std::uint64_t>(i)).to_behavior<Rational>());
  }
  return mix_behaviors(weighted);
}

inline RationalBehavior random_two_party_behavior(Rng& rng, bool mixture,
                                                  const std::vector<RationalBehavior>& vertices) {
  if (!mixture) {
    return vertices[rng.below(vertices.size())];
  }
  std::vector<std::pair<Rational, RationalBehavior>> weighted;
  std::int64_t total = 0;
  std::vector<std::int64_t> raw(4);
  for (auto& r : raw) {
    r = 1 + static_cast<std::int64_t>(rng.below(97));
    total += r;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    weighted.emplace_back(Rational(raw[i], total), vertices[rng.below(vertices.size())]);
  }
  return mix_behaviors(weighted);
}

inline Behavior random_quantum_behavior(Rng& rng, int n_parties, bool mixture) {
  auto sample_one = [&]() {
    const PureState state = haar_random_state(n_parties, rng.below(UINT64_MAX));
    std::vector<std::array<QubitMeasurement, 2>> measurements(static_cast<std::size_t>(n_parties));
    for (auto& pair : measurements) {
      pair[0] = QubitMeasurement{rng.uniform() * kPi, rng.uniform() * 2 * kPi};
      pair[1] = QubitMeasurement{rng.uniform() * kPi, rng.uniform() * 2 * kPi};
    }
    return behavior_from_state(state, MeasurementAssignment(n_parties, std::move(measurements)));
  };
  Behavior first = sample_one();
  if (!mixture) return first;
  const double weight = rng.uniform();
  return mix_behaviors<double>({{weight, first}, {1.0 - weight, sample_one()}});
}

inline Grouping random_grouping(Rng& rng, int n_parties, int m_groups) {
  std::vector<int> order(static_cast<std::size_t>(n_parties));
  for (int i = 0; i < n_parties; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n_parties - 1; i > 0; --i) {
    std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(m_groups));
  for (int g = 0; g < m_groups; ++g) groups[static_cast<std::size_t>(g)].push_back(order[static_cast<std::size_t>(g)]);
  for (int i = m_groups; i < n_parties; ++i) {
    groups[rng.below(static_cast<std::uint64_t>(m_groups))].push_back(order[static_cast<std::size_t>(i)]);
  }
  return Grouping(n_parties, std::move(groups));
}

}  // namespace detail

/// Empirical maximum of the functional over sampled m-separable products:
/// singleton groups take deterministic points or mixtures, two-party groups
/// draw from the NS-vertex polytope, larger groups use quantum behaviors of
/// Haar-random states (a sound inner approximation of their NS set). The
/// result is a lower bound on the true m-separable maximum, reported as
/// falsification evidence; the all-ones product is always sample 0 so the
/// known saturation point is never missed.
inline BoundCertificate grouped_bound_sampled(const BellFunctional& f, int m_groups,
                                              std::uint64_t samples, std::uint64_t rng_seed) {
  const int n = f.n_parties();
  if (m_groups < 2 || m_groups >= n) {
    throw std::invalid_argument("grouped_bound_sampled requires 2 <= m < n");
  }
  const std::vector<RationalBehavior> vertices = bipartite_ns_vertices();

  BoundCertificate cert;
  cert.kind = BoundKind::GroupedSampled;
  cert.sample_count = samples;
  cert.rng_seed = rng_seed;

  bool first = true;
  for (std::uint64_t sample = 0; sample < samples; ++sample) {
    Rng rng(substream_seed(rng_seed, sample));
    Behavior candidate = [&]() {
      if (sample == 0) {
        std::vector<std::vector<int>> groups(static_cast<std::size_t>(m_groups));
        for (int p = 0; p < n - m_groups + 1; ++p) groups[0].push_back(p);
        for (int g = 1; g < m_groups; ++g) groups[static_cast<std::size_t>(g)] = {n - m_groups + g};
        std::vector<std::pair<Behavior, std::vector<int>>> parts;
        for (const auto& group : groups) {
          parts.emplace_back(
              DeterministicStrategy::all_ones(static_cast<int>(group.size())).to_behavior<double>(), group);
        }
        return product_behavior<double>(n, parts);
      }
      const Grouping grouping = detail::random_grouping(rng, n, m_groups);
      std::vector<std::pair<Behavior, std::vector<int>>> parts;
      for (const auto& group : grouping.groups()) {
        const bool mixture = rng.uniform() >= 0.3;
        const int size = static_cast<int>(group.size());
        if (size == 1) {
          parts.emplace_back(to_double_behavior(detail::random_single_party_behavior(rng, mixture)), group);
        } else if (size == 2) {
          parts.emplace_back(to_double_behavior(detail::random_two_party_behavior(rng, mixture, vertices)),
                             group);
        } else {
          parts.emplace_back(detail::random_quantum_behavior(rng, size, mixture), group);
        }
      }
      return product_behavior<double>(n, parts);
    }();

    const double value = f.evaluate(candidate);
    if (first || value > cert.value_float) {
      first = false;
      cert.value_float = value;
      cert.witness_double = std::move(candidate);
      cert.witness_note = "sample " + std::to_string(sample);
    }
  }
  return cert;
}

}  // namespace bellforge

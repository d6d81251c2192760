#pragma once

// Independent reference computations for tests. Nothing here calls the
// closed-form engines; each helper recomputes its quantity the slow way.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "rainbow/nestposet.hpp"
#include "rainbow/qpoly.hpp"
#include "rainbow/setpart.hpp"

namespace rainbow::testing {

/// Bell numbers from the Bell triangle.
inline std::vector<std::uint64_t> bell_numbers(int upto) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= upto; ++n) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

/// Σ_{A ⊆ weights, |A| = k} q^{Σ A} by explicit subset enumeration.
inline QPoly subset_weight_sum(const std::vector<long>& weights, long k) {
  QPoly sum;
  const std::size_t n = weights.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != k) continue;
    long w = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1) w += weights[a];
    sum += QPoly::q_pow(static_cast<unsigned>(w));
  }
  return sum;
}

/// Poset binomial by subset enumeration with weights read off the order relation.
inline QPoly brute_poset_binom(const Poset& P, long k) {
  std::vector<long> wt(P.size(), 0);
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::size_t b = 0; b < P.size(); ++b) wt[a] += P.less(a, b);
  return subset_weight_sum(wt, k);
}

/// Uniform-ish random set partition of ground via a random restricted growth string.
inline SetPartition random_partition(const GroundSet& ground, std::mt19937_64& rng) {
  std::vector<int> block(ground.size());
  int blocks = 0;
  for (std::size_t t = 0; t < ground.size(); ++t) {
    std::uniform_int_distribution<int> pick(0, blocks);
    block[t] = pick(rng);
    if (block[t] == blocks) ++blocks;
  }
  std::vector<Arc> arcs;
  for (std::size_t t = 0; t < ground.size(); ++t)
    for (std::size_t s = t + 1; s < ground.size(); ++s)
      if (block[s] == block[t]) {
        arcs.push_back({ground[t], ground[s]});
        break;
      }
  return SetPartition(ground, std::move(arcs));
}

/// Gaussian binomial from its product formula, used as a check on the recurrence.
inline QPoly qbinom_by_counting_paths(long n, long k) {
  if (k < 0 || k > n) return QPoly();
  // Lattice paths: coefficient of q^i counts k-subsets of {0..n-1} with element sum - C(k,2) = i.
  std::vector<long> idx(static_cast<std::size_t>(n));
  for (long t = 0; t < n; ++t) idx[static_cast<std::size_t>(t)] = t;
  QPoly s = subset_weight_sum(idx, k);
  return s.unshifted(static_cast<unsigned>(choose2(k)));
}

}  // namespace rainbow::testing

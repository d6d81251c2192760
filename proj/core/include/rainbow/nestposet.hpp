#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rainbow/qpoly.hpp"
#include "rainbow/setpart.hpp"

namespace rainbow {

/// Finite strict order on elements 0..n-1, stored transitively closed.
/// Elements built from blocks remember the block and its extreme points.
class Poset {
 public:
  Poset() = default;
  /// less[a][b] means a ≺ b. Throws std::invalid_argument unless irreflexive and transitive.
  explicit Poset(std::vector<std::vector<bool>> less);
  /// Transitive closure of the given cover pairs (a, b), a ≺ b.
  static Poset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers);
  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);

  std::size_t size() const { return less_.size(); }
  bool less(std::size_t a, std::size_t b) const { return less_[a][b]; }
  /// wt(a) = #{b : b ≻ a}.
  long weight(std::size_t a) const { return wt_[a]; }
  long weight(const std::vector<std::size_t>& A) const;
  const std::vector<long>& weights() const { return wt_; }
  std::vector<std::size_t> minimal() const;
  std::vector<std::size_t> maximal() const;
  /// Elements strictly below a.
  std::vector<std::size_t> below(std::size_t a) const;
  /// Induced subposet on P - {a}; element indices above a shift down by one.
  Poset without(std::size_t a) const;
  /// Cover relations (Hasse diagram edges).
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  /// Block payloads; empty unless built by block_poset.
  const std::vector<std::vector<Label>>& blocks() const { return blocks_; }
  Label leftmost(std::size_t a) const { return blocks_[a].front(); }
  Label rightmost(std::size_t a) const { return blocks_[a].back(); }
  /// Elements whose block maximum (resp. minimum) lies in S.
  std::vector<std::size_t> with_max_in(const std::vector<Label>& S) const;
  std::vector<std::size_t> with_min_in(const std::vector<Label>& S) const;

 private:
  friend Poset block_poset(const SetPartition&);
  std::vector<std::vector<bool>> less_;
  std::vector<long> wt_;
  std::vector<std::vector<Label>> blocks_;
};

/// 𝒫(λ) on the blocks of a noncrossing λ: a ≺ b when a nests strictly inside
/// two consecutive points of b. Throws PartitionError{Crossing} otherwise.
Poset block_poset(const SetPartition& lambda);

/// Σ_{A ⊆ P, |A| = k} q^{wt(A)}.
QPoly poset_binom(const Poset& P, long k);
/// Same sum restricted to A ⊆ S, weights taken in P.
QPoly poset_binom(const Poset& P, const std::vector<std::size_t>& S, long k);
/// Product of poset_binom(P, S_j, k_j). Overlapping S_j throw std::invalid_argument.
QPoly poset_multinom(const Poset& P, const std::vector<std::pair<long, std::vector<std::size_t>>>& constraints);
/// Σ_{A ⊆ P, |A| = k} q^{wt(P - A)}.
QPoly poset_binom_complement(const Poset& P, long k);

/// q^{wt(a)}·[P-a; k-1] + [P-a; k], for a minimal.
QPoly poset_binom_min_recursion(const Poset& P, std::size_t a, long k);
/// Σ_j q^j (q^{wt(a)}·[j ⊆ P_a, k-j-1] + [j ⊆ P_a, k-j]) over P - a, for any a.
QPoly poset_binom_general_recursion(const Poset& P, std::size_t a, long k);

}  // namespace rainbow

#pragma once

#include <utility>
#include <vector>

#include "rainbow/nestposet.hpp"
#include "rainbow/qpoly.hpp"
#include "rainbow/scfcore.hpp"
#include "rainbow/setpart.hpp"

namespace rainbow {

// --- column-set modules V_N^K and their hooks ---

/// Coefficient of χ^λ is q^{nst^λ_λ + nst^λ_{K-L(λ)}} for L(λ) ⊆ K.
Decomposition psiK(const GroundSet& N, const std::vector<Label>& K);
/// 0 if L(μ) meets K, else q^{wt↑_{N-L(μ)}(K)}.
QPoly psiK_value(const GroundSet& N, const std::vector<Label>& K, const SetPartition& mu);
/// Summand V^{K↩J}: the λ of psiK(N, K) with R(λ) = J.
Decomposition psi_hook(const GroundSet& N, const std::vector<Label>& K, const std::vector<Label>& J);
/// V^{K↩J} = ⊕_{I ⊆ K, |I| = |J|} q^{wt↑_J(K-I) - wt↑_I(K-I)} V^{I↩J}; only nonzero hooks are listed.
Decomposition endpoint_refine(const GroundSet& N, const std::vector<Label>& K, const std::vector<Label>& J);

/// Row-set module W_N^K under the right action (the dagger image of V_N^{w0 K}).
Decomposition flippedK(const GroundSet& N, const std::vector<Label>& K);
/// 0 if R(μ) meets K, else q^{wt↓_{N-R(μ)}(K)}.
QPoly flippedK_value(const GroundSet& N, const std::vector<Label>& K, const SetPartition& mu);

// --- core modules V_N^k ---

/// Coefficient of χ^λ is q^{nst^λ_λ}·[𝒫(≍λ); k-|λ|].
Decomposition core(const GroundSet& N, long k);
/// q^{C(k,2)}·[|N|-|μ|; k].
QPoly core_value(const GroundSet& N, long k, const SetPartition& mu);
/// V^j ⊗ V^k = ⊕_m q^{C(j-m,2)} [k+m; k+m-j, m, j-m] V^{k+m}, terms with k+m > n dropped.
Decomposition core_tensor(long j, long k, long n);

/// Module values of a PsiK / PsiHook / FlippedK / Core / SuperChar combination on 𝒮_N.
SuperclassFunction module_function(const Decomposition& d, const GroundSet& N);

// --- rainbows ---

/// n- < N < n+ with N = {2, ..., n+1}.
struct RainbowGeometry {
  GroundSet N, ambient;
  Label nm = 0, np = 0;
  static RainbowGeometry make(int n);
  ArcMultiset mu(int m) const;
};

enum class RainbowTarget { Core, Superchars };
/// Res χ^{n- ⌣_m n+}: core target (q-1)^m φ^m_k V^k; superchar target
/// (q-1)^m q^{nst^λ_λ} Σ_{k≥|λ|} φ^m_k [𝒫(≍λ); k-|λ|].
Decomposition rainbow(const GroundSet& N, long m, RainbowTarget target);

// --- interference ---

/// Anchors k- < K̄ < k+ over the ambient set, K ⊆ K̄, ν with no arc inside K̄.
/// Coefficient of V_K^J is q^{ℓ|K̄-K|}(q-1)^ℓ q^{wt↓_X(J) + (ℓ-|J|)|X|} φ^ℓ_{|J|}, X = L(ν) ∩ K.
Decomposition interference_psi(const GroundSet& Kbar, const std::vector<Label>& K, const std::vector<Arc>& nu, long ell);
/// Hook expansion of ψ_K^J ⊙ χ^ν in the χ^λ basis of UT_K (valid after multiplying by χ^ν).
Decomposition interference_hooks(const GroundSet& K, const std::vector<Arc>& nu, const std::vector<Label>& J);
/// χ^ν ⊙ χ^{k- ⌣_ℓ k+} on UT_K (K an interval of N) expressed as χ^ν ⊙ Σ c_λ χ^λ.
Decomposition interference_superchars(const GroundSet& N, const GroundSet& K, const SetPartition& nu, long ell);

enum class Side { Right, Left };
/// One side of the left/right symmetry: Σ_{l=|λ|}^ℓ q^{(ℓ-l)|X|} φ^ℓ_l [𝒫(≍(λ∪ν)); l-|λ| ⊆ bl], where
/// Right uses X = L(ν) ∩ K and blocks with max in K, Left uses X = R(ν) ∩ K and blocks with min in K.
QPoly interference_side(const GroundSet& N, const std::vector<Label>& K, const SetPartition& lambda,
                        const SetPartition& nu, long ell, Side side);
/// Block weights entering interference_side (sorted).
std::vector<long> interference_side_weights(const GroundSet& N, const std::vector<Label>& K, const SetPartition& lambda,
                                            const SetPartition& nu, Side side);

// --- peel, double rainbow, onion ---

/// V^{(b;f)}: coefficient of χ^ν is q^{nst^ν_ν}[𝒫(≍ν); f-|ν| ⊆ bl_{R(N_<)} ∪ bl_{L(N_>)}] over ν with
/// |ν| ≤ f, |_<ν_>| = b, ν_= = ∅. Throws std::invalid_argument outside the parameter range.
Decomposition peel(const DoubleGeometry& g, long b, long f);
bool peel_in_range(const DoubleGeometry& g, long b, long f);
QPoly peel_value(const DoubleGeometry& g, long b, long f, const SetPartition& mu);

/// nst^μ over the distinct anchor points of the geometry.
long anchor_nestings(const ArcMultiset& mu, const std::vector<Label>& anchors);

enum class DoubleTarget { Peel, Superchars };
Decomposition double_rainbow(const DoubleGeometry& g, long m, long ell, DoubleTarget target);
/// Coefficient of the trivial character, q^{nst}(q-1)^{m+ℓ} Σ φ^m_f φ^{m-f+ℓ}_l C(|N-N_=|, f) C(|N_=|, l).
QPoly double_rainbow_trivial(const DoubleGeometry& g, long m, long ell);
/// The same sum with the prefactor written as q^{2m} (agrees when no anchors collapse).
QPoly double_rainbow_trivial_generic(long m, long ell, long n_ne, long n_eq);

/// Onion geometry sharing the anchors and regions of a double geometry (two layers).
OnionGeometry onion_from_double(const DoubleGeometry& g);
/// Index set I_m: f_j ≤ m_{≤j} - f_{≤j-1}, b_j ≤ f_j, b_k = 0; restricted to nonzero modules.
std::vector<std::pair<std::vector<long>, std::vector<long>>> onion_index(const OnionGeometry& g, const std::vector<long>& m);
/// q^{(m_j-f_j)b_{j<=}} may be negative for k >= 3; the φ factor absorbs it.
Decomposition onion(const OnionGeometry& g, const std::vector<long>& m);
/// Value of the onion module V^{(b;f)} at u_μ (layers inflated from UT_{N_j}).
QPoly onion_value(const OnionGeometry& g, const std::vector<long>& b, const std::vector<long>& f, const SetPartition& mu);

// --- the algebra ut_N under left multiplication ---

/// q^{C(n,2)} ∏_{i⌣j ∈ μ} q^{-wt↑_N(j)}.
QPoly ut_trace(const GroundSet& N, const SetPartition& mu);
/// Σ_A (q-1)^{|A|} ∏_{a∈A} [wt↑_{N-A}(a)] W_N^A.
Decomposition ut_flipped(const GroundSet& N);
/// Coefficient of χ^λ: q^{nst^λ_λ} Σ_{R(λ) ⊆ A ⊆ N-{max N}} q^{nst^λ_{A-R(λ)}} ∏_{a∈A}(q^{wt↑_{N-A}(a)} - 1).
Decomposition ut_superchars(const GroundSet& N);
/// The left-action form q^{C(n-1,2)}(q-1)^{|A|} ∏_{a∈A}[1 + wt↑_{N-A}(a)] V_N^A, kept for comparison.
Decomposition ut_core_style_left(const GroundSet& N);

}  // namespace rainbow

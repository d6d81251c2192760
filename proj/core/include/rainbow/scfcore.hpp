#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/qpoly.hpp"
#include "rainbow/setpart.hpp"

namespace rainbow {

/// χ^λ(u_μ) over the ambient ground set; λ may carry repeated arcs.
QPoly superchar_value(const std::vector<Arc>& lambda, const SetPartition& mu, const GroundSet& ambient);
/// Closed form (q-1)^{|λ-μ|} (-1)^{|λ∩μ|} q^{nst^λ_N - nst^λ_μ} for a set partition λ.
QPoly superchar_value_direct(const SetPartition& lambda, const SetPartition& mu, const GroundSet& ambient);
/// Integer value at a concrete q.
mpz_class superchar_value_at(const std::vector<Arc>& lambda, const std::vector<Arc>& mu, const GroundSet& ambient, long q);

/// Function on the superclasses of UT_K: one value per μ ∈ 𝒮_K, in enumeration order.
class SuperclassFunction {
 public:
  SuperclassFunction() = default;
  explicit SuperclassFunction(GroundSet K);
  SuperclassFunction(GroundSet K, std::vector<QPoly> values);

  const GroundSet& ground() const { return ground_; }
  const std::vector<SetPartition>& classes() const;
  const std::vector<QPoly>& values() const { return values_; }
  std::vector<QPoly>& values() { return values_; }
  std::size_t size() const { return values_.size(); }
  const QPoly& value(std::size_t idx) const { return values_[idx]; }
  const QPoly& value(const SetPartition& mu) const;
  std::size_t index_of(const SetPartition& mu) const;
  friend bool operator==(const SuperclassFunction& a, const SuperclassFunction& b) {
    return a.ground_ == b.ground_ && a.values_ == b.values_;
  }

 private:
  GroundSet ground_;
  std::vector<QPoly> values_;
};

/// 𝒮_K in enumeration order, shared per ground set.
const std::vector<SetPartition>& superclasses(const GroundSet& K);

/// Values of χ^λ (λ over N') on the superclasses of K ⊆ N'.
SuperclassFunction restrict_values(const ArcMultiset& lambda, const GroundSet& K);
/// χ^λ as a superclass function of its own ground set.
SuperclassFunction superchar_function(const SetPartition& lambda);
/// Pointwise product; throws std::invalid_argument on ground mismatch.
SuperclassFunction odot(const SuperclassFunction& f, const SuperclassFunction& g);

// --- decompositions ---

struct SuperChar {
  SetPartition lambda;
  auto operator<=>(const SuperChar&) const = default;
};
struct PsiK {
  std::vector<Label> K;
  auto operator<=>(const PsiK&) const = default;
};
/// V^{K↩J}: the summand of V^K spanned by arcs with right endpoints J.
struct PsiHook {
  std::vector<Label> K, J;
  auto operator<=>(const PsiHook&) const = default;
};
/// Right-action row-set module (the dagger image of a column-set module).
struct FlippedK {
  std::vector<Label> K;
  auto operator<=>(const FlippedK&) const = default;
};
struct Core {
  long k = 0;
  auto operator<=>(const Core&) const = default;
};
/// V^{(b;f)} tensored with the inner rainbow of multiplicity `rainbow`.
struct Peel {
  long b = 0, f = 0, rainbow = 0;
  auto operator<=>(const Peel&) const = default;
};
struct Onion {
  std::vector<long> b, f;
  auto operator<=>(const Onion&) const = default;
};
struct Rainbow {
  long m = 0;
  auto operator<=>(const Rainbow&) const = default;
};

using ModuleLabel = std::variant<SuperChar, PsiK, PsiHook, FlippedK, Core, Peel, Onion, Rainbow>;
std::string label_to_string(const ModuleLabel& l);

struct Decomposition {
  std::string basis;
  std::map<ModuleLabel, QPoly> terms;

  /// Accumulates; zero totals are dropped.
  void add(const ModuleLabel& l, const QPoly& c);
  QPoly coeff(const ModuleLabel& l) const;
  friend bool operator==(const Decomposition& a, const Decomposition& b) {
    return a.basis == b.basis && a.terms == b.terms;
  }
};

/// Σ c_λ χ^λ evaluated on the superclasses of K (every label must be SuperChar over K).
SuperclassFunction evaluate(const Decomposition& d, const GroundSet& K);

class SolverError : public std::runtime_error {
 public:
  enum class Kind { Singular, NonPolynomial, TooLarge };
  SolverError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// [χ^ν(u_μ)] at a fixed q over 1..n, with its exact inverse. Cached per (n, q).
class CharTable {
 public:
  static std::shared_ptr<const CharTable> get(std::size_t n, long q);
  std::size_t n() const { return n_; }
  long q() const { return q_; }
  std::size_t size() const { return classes_->size(); }
  const std::vector<SetPartition>& classes() const { return *classes_; }
  /// χ^{classes[nu]}(u_{classes[mu]}).
  const mpz_class& at(std::size_t mu, std::size_t nu) const { return m_[mu * size() + nu]; }
  /// c with Σ_ν c_ν χ^ν(u_μ) = f_μ.
  std::vector<mpq_class> solve(const std::vector<mpq_class>& f) const;

  CharTable(std::size_t n, long q);

 private:
  std::size_t n_;
  long q_;
  const std::vector<SetPartition>* classes_;
  std::vector<mpz_class> m_;
  std::vector<mpq_class> inv_;
};

inline constexpr std::size_t kMaxSolveSize = 6;

/// Coefficients in the χ^ν basis at one q, indexed like superclasses(K).
std::vector<mpq_class> decompose_at(const SuperclassFunction& f, long q);
/// Same from raw integer values at q.
std::vector<mpq_class> decompose_values(const GroundSet& K, const std::vector<mpq_class>& values, long q);
/// Symbolic decomposition: solves at degree_bound + 1 primes, interpolates, and
/// checks one further prime. Coefficients must be integer polynomials.
Decomposition decompose_exact(const SuperclassFunction& f, int degree_bound);

}  // namespace rainbow

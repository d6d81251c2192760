#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "rainbow/setpart.hpp"

namespace rainbow::oracle {

class OracleError : public std::runtime_error {
 public:
  enum class Kind { BudgetExceeded, NotRational, BadInput };
  OracleError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Dense n×n matrix over F_p, p prime. Rows and columns are positions 0..n-1.
struct FpMat {
  int n = 0;
  int p = 2;
  std::vector<std::uint8_t> a;

  FpMat() = default;
  FpMat(int n_, int p_) : n(n_), p(p_), a(static_cast<std::size_t>(n_ * n_), 0) {}
  static FpMat identity(int n, int p);
  /// u_μ = Id + Σ_{i⌣j ∈ μ} E_ij over ground 1..n.
  static FpMat u_of(const SetPartition& mu, int p);

  std::uint8_t at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  std::uint8_t& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  FpMat operator*(const FpMat& o) const;
  FpMat operator-(const FpMat& o) const;
  bool operator==(const FpMat& o) const { return a == o.a; }
  bool is_unitriangular() const;
  /// (g†)_{ij} = g_{w0 j, w0 i}.
  FpMat dagger() const;
  FpMat inverse_unitriangular() const;
  /// Rank of rows >= r0 and columns <= c1 (columns 0..c1).
  int sw_rank(int r0, int c1) const;
};

/// Element of Z[ζ_p] in the basis 1, ζ, ..., ζ^{p-2}.
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(int p) : p_(p), c_(static_cast<std::size_t>(p > 2 ? p - 1 : 1), 0) {}
  static CyclotomicInt integer(int p, long long v);
  /// From counts[x] = multiplicity of ζ^x, x in 0..p-1.
  static CyclotomicInt from_counts(int p, const std::vector<long long>& counts);

  int p() const { return p_; }
  void add_root(int x, long long mult = 1);
  bool is_rational() const;
  /// Throws OracleError{NotRational} if not a rational integer.
  long to_integer() const;
  /// ζ ↦ ζ^k, gcd(k, p) = 1.
  CyclotomicInt galois(int k) const;
  CyclotomicInt& operator+=(const CyclotomicInt& o);
  bool operator==(const CyclotomicInt& o) const { return p_ == o.p_ && c_ == o.c_; }
  std::string to_string() const;

 private:
  int p_ = 2;
  std::vector<long long> c_{0};
};

/// Two-sided B×B orbits on ut_N = UT_N - Id, state index = base-p digits of the
/// strictly upper entries in row-major order.
struct OrbitTable {
  int n = 0, p = 2;
  std::vector<std::uint32_t> orbit_of;
  std::vector<SetPartition> rep;  // over 1..n
  std::vector<std::uint64_t> size;

  std::size_t orbits() const { return rep.size(); }
  std::uint64_t states() const { return orbit_of.size(); }
  FpMat state_matrix(std::uint64_t s) const;  // the unitriangular Id + X
  std::uint64_t state_index(const FpMat& u) const;
};

OrbitTable superclass_orbits(int n, int p, std::uint64_t budget = kDefaultBudget);

struct Regular {};
struct UtAlgebra {};
/// Column support K (labels in 1..n), left action.
struct PsiKSpec {
  std::vector<Label> K;
};
/// Basis vectors of lt^K whose south-west rank pattern has right endpoints J.
struct PsiHookSpec {
  std::vector<Label> K, J;
};
/// Row support K, right action.
struct FlippedKSpec {
  std::vector<Label> K;
};
using ModuleSpec = std::variant<Regular, UtAlgebra, PsiKSpec, PsiHookSpec, FlippedKSpec>;

/// Trace of u on the module with ϑ(x) = ζ^{theta·x}.
CyclotomicInt module_trace(const ModuleSpec& spec, const FpMat& u, int theta = 1,
                           std::uint64_t budget = kDefaultBudget);
/// Traces of u on the summands of lt^K indexed by the pattern λ(v); order of superclasses(1..n).
std::vector<CyclotomicInt> module_trace_by_lambda(const std::vector<Label>& K, const FpMat& u, int theta = 1,
                                                  std::uint64_t budget = kDefaultBudget);
/// Set partition read off the south-west rank pattern of a strictly lower matrix.
SetPartition pivot_partition(const FpMat& v);

/// Solves Σ_ν c_ν χ^ν(u_μ)|_{q=p} = values[μ] (order of superclasses(1..n)).
std::vector<mpq_class> numeric_decompose(const std::vector<CyclotomicInt>& values, int n, int p);

struct ConstancyReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string first_violation;
};
ConstancyReport verify_constancy(const std::function<CyclotomicInt(const FpMat&)>& f, const OrbitTable& table);

/// Number of k-dimensional subspaces of F_p^n by closure-based enumeration.
std::uint64_t count_subspaces(int n, int k, int p);

}  // namespace rainbow::oracle

#include "doctest.h"

#include <random>

#include "rainbow/oracle.hpp"
#include "rainbow/restrict.hpp"

using namespace rainbow;
using namespace rainbow::oracle;

namespace {

FpMat random_unitriangular(int n, int p, std::mt19937_64& rng) {
  FpMat u = FpMat::identity(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u.at(i, j) = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(p));
  return u;
}

long trace_int(const ModuleSpec& s, const FpMat& u) { return module_trace(s, u).to_integer(); }

}  // namespace

TEST_CASE("cyclotomic integers") {
  CyclotomicInt z(3);
  z.add_root(0);
  z.add_root(1);
  z.add_root(2);
  CHECK(z.is_rational());
  CHECK(z.to_integer() == 0);
  CHECK(CyclotomicInt::from_counts(5, {2, 1, 1, 1, 1}).to_integer() == 1);
  CHECK(CyclotomicInt::integer(7, -4).to_integer() == -4);
  CyclotomicInt w(5);
  w.add_root(1);
  CHECK_FALSE(w.is_rational());
  CHECK_THROWS_AS(w.to_integer(), OracleError);
  CyclotomicInt w2(5);
  w2.add_root(2);
  CHECK(w.galois(2) == w2);
  CyclotomicInt two(2);
  two.add_root(1, 3);
  CHECK(two.to_integer() == -3);
}

TEST_CASE("matrix helpers") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const FpMat u = random_unitriangular(n, 3, rng);
    CHECK(u.is_unitriangular());
    CHECK(u * u.inverse_unitriangular() == FpMat::identity(n, 3));
    CHECK(u.dagger().dagger() == u);
    CHECK((u * u).dagger() == u.dagger() * u.dagger());
  }
}

TEST_CASE("trivial and regular traces") {
  for (int n = 1; n <= 4; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (int p : {2, 3}) {
      long full = 1;
      for (long t = 0; t < choose2(n); ++t) full *= p;
      for (const SetPartition& mu : superclasses(N)) {
        const FpMat u = FpMat::u_of(mu, p);
        CHECK(trace_int(PsiKSpec{{}}, u) == 1);
        CHECK(trace_int(Regular{}, u) == (mu.empty() ? full : 0));
        if (mu.empty()) CHECK(trace_int(UtAlgebra{}, u) == full);
      }
    }
  }
}

TEST_CASE("traces are rational and Galois stable") {
  const GroundSet N = GroundSet::first(4);
  for (const auto& K : subsets(N.labels()))
    for (const SetPartition& mu : superclasses(N)) {
      const FpMat u = FpMat::u_of(mu, 3);
      const CyclotomicInt t1 = module_trace(PsiKSpec{K}, u, 1);
      CHECK(t1.is_rational());
      CHECK(module_trace(PsiKSpec{K}, u, 2) == t1);
    }
}

TEST_CASE("row-set traces are dagger images of column-set traces") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int p = trial % 2 ? 3 : 2;
    const GroundSet N = GroundSet::first(n);
    const auto Ks = subsets(N.labels());
    const auto& K = Ks[rng() % Ks.size()];
    std::vector<Label> w0K;
    for (Label k : K) w0K.push_back(N.w0(k));
    std::sort(w0K.begin(), w0K.end());
    const FpMat u = random_unitriangular(n, p, rng);
    CHECK(module_trace(FlippedKSpec{K}, u) == module_trace(PsiKSpec{w0K}, u.dagger()));
  }
}

TEST_CASE("hook traces match the hook decompositions") {
  for (int n = 1; n <= 4; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (const auto& K : subsets(N.labels()))
      for (const auto& J : subsets(N.labels())) {
        if (J.size() > K.size()) continue;
        const SuperclassFunction v = evaluate(psi_hook(N, K, J), N);
        for (std::size_t k = 0; k < v.size(); ++k)
          CHECK(trace_int(PsiHookSpec{K, J}, FpMat::u_of(v.classes()[k], 2)) == v.value(k).eval(2));
      }
  }
}

TEST_CASE("traces split by rank pattern") {
  const GroundSet N = GroundSet::first(4);
  for (const auto& K : subsets(N.labels()))
    for (const SetPartition& mu : superclasses(N)) {
      const FpMat u = FpMat::u_of(mu, 2);
      CyclotomicInt sum(2);
      for (const CyclotomicInt& t : module_trace_by_lambda(K, u)) sum += t;
      CHECK(sum == module_trace(PsiKSpec{K}, u));
    }
}

TEST_CASE("superclass constancy") {
  const OrbitTable t = superclass_orbits(4, 2);
  const auto psi = [](const std::vector<Label>& K) {
    return [K](const FpMat& u) { return module_trace(PsiKSpec{K}, u); };
  };
  CHECK(verify_constancy(psi({2, 4}), t).ok);
  CHECK(verify_constancy([](const FpMat& u) { return module_trace(Regular{}, u); }, t).ok);
  // an entry of the matrix is not a class function once scalars act
  const OrbitTable t3 = superclass_orbits(2, 3);
  const ConstancyReport bad =
      verify_constancy([](const FpMat& u) { return CyclotomicInt::integer(3, u.at(0, 1)); }, t3);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.first_violation.empty());
}

TEST_CASE("numeric decomposition recovers column-set coefficients") {
  for (int n = 1; n <= 4; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (int p : {2, 3}) {
      if (n == 4 && p == 3) continue;
      for (const auto& K : subsets(N.labels())) {
        std::vector<CyclotomicInt> vals;
        for (const SetPartition& mu : superclasses(N)) vals.push_back(module_trace(PsiKSpec{K}, FpMat::u_of(mu, p)));
        const std::vector<mpq_class> c = numeric_decompose(vals, n, p);
        const Decomposition d = psiK(N, K);
        for (std::size_t k = 0; k < c.size(); ++k)
          CHECK(c[k] == mpq_class(d.coeff(SuperChar{superclasses(N)[k]}).eval(p)));
      }
    }
  }
}

TEST_CASE("subspace counts") {
  CHECK(count_subspaces(4, 2, 2) == 35);
  CHECK(count_subspaces(3, 1, 3) == 13);
  CHECK(count_subspaces(5, 0, 2) == 1);
  CHECK(count_subspaces(5, 5, 2) == 1);
}

TEST_CASE("budgets and bad input") {
  CHECK_THROWS_AS(superclass_orbits(4, 3, 10), OracleError);
  CHECK_THROWS_AS(superclass_orbits(9, 2), OracleError);
  CHECK_THROWS_AS(superclass_orbits(3, 4), OracleError);
  try {
    superclass_orbits(5, 2, 5);
  } catch (const OracleError& e) {
    CHECK(e.kind == OracleError::Kind::BudgetExceeded);
  }
  CHECK_THROWS_AS(module_trace(Regular{}, FpMat::identity(4, 2), 1, 3), OracleError);
}

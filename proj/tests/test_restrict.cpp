#include "doctest.h"

#include <random>

#include "rainbow/restrict.hpp"
#include "support.hpp"

using namespace rainbow;

namespace {

QPoly qm1() { return QPoly::q() - QPoly(1); }
QPoly qp(long e) { return QPoly::q_pow(static_cast<unsigned>(e)); }

SetPartition empty_on(const GroundSet& N) { return SetPartition(N, {}); }

/// Values of a supercharacter-basis decomposition, computed term by term.
SuperclassFunction values_of(const Decomposition& d, const GroundSet& N) { return evaluate(d, N); }

void check_nonnegative(const Decomposition& d) {
  for (const auto& [label, c] : d.terms)
    for (long q : {2L, 3L, 4L, 5L}) CHECK(c.eval(q) >= 0);
}

}  // namespace

TEST_CASE("column-set modules: trivial and regular") {
  const GroundSet N = GroundSet::first(4);
  const Decomposition triv = psiK(N, {});
  REQUIRE(triv.terms.size() == 1);
  CHECK(triv.coeff(SuperChar{empty_on(N)}) == QPoly(1));
  for (const SetPartition& mu : superclasses(N)) {
    CHECK(psiK_value(N, {}, mu) == QPoly(1));
    CHECK(psiK_value(N, N.labels(), mu) == (mu.empty() ? qp(choose2(4)) : QPoly()));
  }
  CHECK_THROWS_AS(psiK(N, {5}), std::invalid_argument);
}

TEST_CASE("column-set modules: decomposition matches value") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (const auto& K : subsets(N.labels())) {
      const Decomposition d = psiK(N, K);
      check_nonnegative(d);
      const SuperclassFunction v = values_of(d, N);
      for (std::size_t k = 0; k < v.size(); ++k) CHECK(v.value(k) == psiK_value(N, K, v.classes()[k]));
    }
  }
}

TEST_CASE("hooks split the column-set module by right endpoints") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (const auto& K : subsets(N.labels())) {
      Decomposition sum{"supercharacter", {}};
      for (const auto& J : subsets(N.labels()))
        for (const auto& [l, c] : psi_hook(N, K, J).terms) sum.add(l, c);
      CHECK(sum.terms == psiK(N, K).terms);
      const Decomposition none = psi_hook(N, K, {});
      REQUIRE(none.terms.size() == 1);
      CHECK(none.coeff(SuperChar{empty_on(N)}) == QPoly(1));
    }
  }
}

TEST_CASE("endpoint refinement of hooks") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (const auto& K : subsets(N.labels()))
      for (const auto& J : subsets(N.labels())) {
        if (J.size() > K.size()) continue;
        CHECK(module_function(endpoint_refine(N, K, J), N) == values_of(psi_hook(N, K, J), N));
      }
  }
}

TEST_CASE("row-set modules are dagger images") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    for (const auto& K : subsets(N.labels())) {
      const SuperclassFunction v = values_of(flippedK(N, K), N);
      for (std::size_t k = 0; k < v.size(); ++k) CHECK(v.value(k) == flippedK_value(N, K, v.classes()[k]));
    }
  }
}

TEST_CASE("core modules") {
  for (int n = 0; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    CHECK(core(N, 0).terms == psiK(N, {}).terms);
    for (long k = 0; k <= n; ++k) {
      Decomposition sum{"supercharacter", {}};
      for (const auto& K : subsets_of_size(N.labels(), static_cast<std::size_t>(k)))
        for (const auto& [l, c] : psiK(N, K).terms) sum.add(l, c);
      const Decomposition d = core(N, k);
      CHECK(sum.terms == d.terms);
      check_nonnegative(d);
      const SuperclassFunction v = values_of(d, N);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(v.value(i) == core_value(N, k, v.classes()[i]));
    }
    if (n > 0) CHECK(core_value(N, n, empty_on(N)) == qp(choose2(n)));
  }
}

TEST_CASE("tensor products of core modules") {
  const Decomposition zero = core_tensor(0, 3, 6);
  REQUIRE(zero.terms.size() == 1);
  CHECK(zero.coeff(Core{3}) == QPoly(1));
  for (long k = 1; k <= 5; ++k) {
    const Decomposition one = core_tensor(1, k, 8);
    CHECK(one.coeff(Core{k}) == qint(k));
    CHECK(one.coeff(Core{k + 1}) == qint(k + 1));
  }
  // values multiply
  for (long n = 0; n <= 6; ++n) {
    const GroundSet N = GroundSet::first(static_cast<int>(n));
    for (long k = 0; k <= n; ++k)
      for (long j = 0; j <= k; ++j) {
        const SuperclassFunction lhs = odot(module_function({"core", {{Core{j}, QPoly(1)}}}, N),
                                            module_function({"core", {{Core{k}, QPoly(1)}}}, N));
        CHECK(lhs == module_function(core_tensor(j, k, n), N));
      }
  }
}

TEST_CASE("rainbow to core modules") {
  for (int n = 1; n <= 5; ++n) {
    const RainbowGeometry g = RainbowGeometry::make(n);
    const Decomposition m0 = rainbow::rainbow(g.N, 0, RainbowTarget::Core);
    REQUIRE(m0.terms.size() == 1);
    CHECK(m0.coeff(Core{0}) == QPoly(1));
    const Decomposition m1 = rainbow::rainbow(g.N, 1, RainbowTarget::Core);
    CHECK(m1.coeff(Core{0}) == qm1());
    CHECK(m1.coeff(Core{1}) == qm1() * qm1());
    for (int m = 0; m <= 4; ++m) {
      const Decomposition cores = rainbow::rainbow(g.N, m, RainbowTarget::Core);
      CHECK(module_function(cores, g.N) == restrict_values(g.mu(m), g.N));
      // composing with the core decompositions gives the supercharacter target
      Decomposition composed{"supercharacter", {}};
      for (const auto& [l, c] : cores.terms)
        for (const auto& [s, e] : core(g.N, std::get<Core>(l).k).terms) composed.add(s, c * e);
      const Decomposition direct = rainbow::rainbow(g.N, m, RainbowTarget::Superchars);
      CHECK(composed.terms == direct.terms);
      check_nonnegative(direct);
    }
  }
}

TEST_CASE("interference with column-set modules") {
  // ambient 1..7, anchors 2 and 6, K-bar = {3,4,5}
  const GroundSet amb = GroundSet::first(7);
  const GroundSet Kbar({3, 4, 5});
  std::vector<Arc> outside;
  for (Label i = 1; i <= 7; ++i)
    for (Label j = i + 1; j <= 7; ++j)
      if (!(Kbar.contains(i) && Kbar.contains(j))) outside.push_back({i, j});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Arc> nu;
    for (int t = static_cast<int>(rng() % 3); t > 0; --t) nu.push_back(outside[rng() % outside.size()]);
    const auto Ks = subsets(Kbar.labels());
    const auto& Kl = Ks[rng() % Ks.size()];
    const GroundSet K(Kl);
    const long ell = static_cast<long>(rng() % 3);
    ArcMultiset both(amb, nu);
    both.add({2, 6}, static_cast<int>(ell));
    const SuperclassFunction lhs = restrict_values(both, K);
    const SuperclassFunction rhs =
        odot(restrict_values(ArcMultiset(amb, nu), K), module_function(interference_psi(Kbar, Kl, nu, ell), K));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("interference hooks and supercharacters") {
  const GroundSet N = GroundSet::first(7);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Label lo = 2 + static_cast<Label>(rng() % 3);
    const Label hi = lo + static_cast<Label>(rng() % (6 - lo + 1));
    const GroundSet K = GroundSet::range(lo, hi);
    const SetPartition gam = testing::random_partition(N, rng);
    std::vector<Arc> nu_arcs;
    for (const Arc& a : gam.arcs())
      if (!(K.contains(a.i) && K.contains(a.j))) nu_arcs.push_back(a);
    const SetPartition nu(N, nu_arcs);
    const SuperclassFunction chinu = restrict_values(nu.as_multiset(), K);

    const auto Js = subsets(K.labels());
    const auto& J = Js[rng() % Js.size()];
    const SuperclassFunction hook = module_function({"psiK", {{PsiK{J}, QPoly(1)}}}, K);
    CHECK(odot(chinu, hook) == odot(chinu, evaluate(interference_hooks(K, nu_arcs, J), K)));

    const long ell = static_cast<long>(rng() % 3);
    ArcMultiset both = nu.as_multiset();
    both.add({lo - 1, hi + 1}, static_cast<int>(ell));
    CHECK(restrict_values(both, K) == odot(chinu, evaluate(interference_superchars(N, K, nu, ell), K)));
  }
}

TEST_CASE("left/right symmetry of the interference sums") {
  // every arc of nu has exactly one endpoint in K
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const GroundSet N = GroundSet::first(n);
    const Label lo = 1 + static_cast<Label>(rng() % n);
    const Label hi = lo + static_cast<Label>(rng() % (n - lo + 1));
    const auto K = GroundSet::range(lo, hi).labels();
    const SetPartition gam = testing::random_partition(N, rng);
    const SetPartition lam(N, arcs_within(gam.arcs(), K));
    std::vector<Arc> rest;
    for (const Arc& a : gam.arcs())
      if (std::binary_search(K.begin(), K.end(), a.i) != std::binary_search(K.begin(), K.end(), a.j)) rest.push_back(a);
    const SetPartition nu(N, rest);
    const long ell = static_cast<long>(lam.size() + rng() % 3);
    CHECK(interference_side(N, K, lam, nu, ell, Side::Right) == interference_side(N, K, lam, nu, ell, Side::Left));
  }
}

TEST_CASE("peel modules") {
  // N_= = N: only the trivial peel
  const DoubleGeometry eq_only = DoubleGeometry::make(0, 3, 0);
  CHECK(peel_in_range(eq_only, 0, 0));
  CHECK_FALSE(peel_in_range(eq_only, 0, 1));
  CHECK(peel(eq_only, 0, 0).coeff(SuperChar{empty_on(eq_only.N)}) == QPoly(1));
  CHECK(peel(eq_only, 0, 0).terms.size() == 1);
  CHECK_THROWS_AS(peel(eq_only, 1, 1), std::invalid_argument);
  // N_<= empty: peel (0;f) is the core module
  for (int c = 1; c <= 4; ++c) {
    const DoubleGeometry g = DoubleGeometry::make(0, 0, c);
    for (long f = 0; f <= c; ++f) CHECK(peel(g, 0, f).terms == core(g.N, f).terms);
  }
  // values agree with decompositions
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) {
        const DoubleGeometry g = DoubleGeometry::make(a, b, c);
        for (long f = 0; f <= a + c; ++f)
          for (long bb = 0; bb <= std::min(a, c); ++bb) {
            if (!peel_in_range(g, bb, f)) continue;
            const Decomposition d = peel(g, bb, f);
            check_nonnegative(d);
            const SuperclassFunction v = values_of(d, g.N);
            for (std::size_t k = 0; k < v.size(); ++k) CHECK(v.value(k) == peel_value(g, bb, f, v.classes()[k]));
          }
      }
}

TEST_CASE("double rainbow in peel modules reproduces the restriction") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c)
        for (int m = 0; m <= 2; ++m)
          for (int ell = 0; ell <= 2; ++ell) {
            const DoubleGeometry g = DoubleGeometry::make(a, b, c);
            const SuperclassFunction want = restrict_values(g.mu(m, ell), g.N);
            SuperclassFunction got(g.N, std::vector<QPoly>(want.size()));
            for (const auto& [label, coef] : double_rainbow(g, m, ell, DoubleTarget::Peel).terms) {
              const auto& pl = std::get<Peel>(label);
              ArcMultiset inner(g.ambient, {});
              if (pl.rainbow > 0) inner.add({g.nm, g.np}, static_cast<int>(pl.rainbow));
              const SuperclassFunction r = restrict_values(inner, g.N);
              for (std::size_t k = 0; k < got.size(); ++k)
                got.values()[k] += coef * peel_value(g, pl.b, pl.f, got.classes()[k]) * r.value(k);
            }
            CHECK(got == want);
          }
}

TEST_CASE("double rainbow special cases") {
  // N_< and N_> empty: one rainbow of multiplicity m + l
  for (int b = 1; b <= 3; ++b)
    for (int m = 0; m <= 2; ++m)
      for (int ell = 0; ell <= 2; ++ell) {
        const DoubleGeometry g = DoubleGeometry::make(0, b, 0);
        const RainbowGeometry r = RainbowGeometry::make(b);
        CHECK(restrict_values(g.mu(m, ell), g.N).values() == restrict_values(r.mu(m + ell), r.N).values());
        CHECK(double_rainbow(g, m, ell, DoubleTarget::Superchars).terms ==
              rainbow::rainbow(g.N, m + ell, RainbowTarget::Superchars).terms);
      }
  // generic geometry: the anchor prefactor is q^{2m}
  for (int m = 0; m <= 2; ++m)
    for (int ell = 0; ell <= 2; ++ell) {
      const DoubleGeometry g = DoubleGeometry::make(1, 2, 1);
      CHECK(double_rainbow_trivial(g, m, ell) == double_rainbow_trivial_generic(m, ell, 2, 2));
    }
  // N_= empty, |N_<| = |N_>| = l': coefficient of the full nested rainbow
  for (int lp = 1; lp <= 2; ++lp)
    for (int m = lp; m <= 3; ++m) {
      const DoubleGeometry g = DoubleGeometry::make(lp, 0, lp);
      std::vector<Arc> full;
      for (int t = 0; t < lp; ++t) full.push_back({g.lt[static_cast<std::size_t>(t)], g.gt[static_cast<std::size_t>(lp - 1 - t)]});
      const SetPartition lam(g.N, full);
      const long pre = anchor_nestings(g.mu(m, 0), g.anchors());
      const QPoly want = (qm1().pow(static_cast<unsigned>(m)) * qphi(m, lp))
                             .shifted(static_cast<unsigned>(pre + nst(full, full) + (m - lp) * lp));
      CHECK(double_rainbow(g, m, 0, DoubleTarget::Superchars).coeff(SuperChar{lam}) == want);
    }
}

TEST_CASE("onion modules") {
  // one layer: rainbow to core
  for (int n = 1; n <= 4; ++n) {
    const OnionGeometry o = OnionGeometry::make({}, {}, n);
    for (long m = 0; m <= 3; ++m) {
      Decomposition asc{"core", {}};
      for (const auto& [l, c] : onion(o, {m}).terms) asc.add(Core{std::get<Onion>(l).f[0]}, c);
      CHECK(asc.terms == rainbow::rainbow(o.N, m, RainbowTarget::Core).terms);
    }
  }
  // three layers, zero multiplicities and f_j > m_j included
  for (const auto& shape : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{1, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {{1, 1}, {1, 1}}}) {
    const OnionGeometry o = OnionGeometry::make(shape.first, shape.second, 1);
    for (int m1 = 0; m1 <= 2; ++m1)
      for (int m2 = 0; m2 <= 2; ++m2)
        for (int m3 = 0; m3 <= 2; ++m3) {
          const SuperclassFunction want = restrict_values(o.mu({m1, m2, m3}), o.N);
          SuperclassFunction got(o.N, std::vector<QPoly>(want.size()));
          for (const auto& [label, coef] : onion(o, {m1, m2, m3}).terms) {
            const auto& on = std::get<Onion>(label);
            CHECK(on.b.back() == 0);
            for (std::size_t k = 0; k < got.size(); ++k) got.values()[k] += coef * onion_value(o, on.b, on.f, got.classes()[k]);
          }
          CHECK(got == want);
        }
  }
}

TEST_CASE("the algebra ut_N under left multiplication") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet N = GroundSet::first(n);
    CHECK(ut_trace(N, empty_on(N)) == qp(choose2(n)));
    SuperclassFunction tr(N);
    for (std::size_t k = 0; k < tr.size(); ++k) tr.values()[k] = ut_trace(N, tr.classes()[k]);
    CHECK(module_function(ut_flipped(N), N) == tr);
    const Decomposition sc = ut_superchars(N);
    check_nonnegative(sc);
    CHECK(values_of(sc, N) == tr);
  }
  const GroundSet N2 = GroundSet::first(2);
  CHECK(ut_trace(N2, parse_partition("1-2", N2)) == QPoly::q());
  // The left-action form cannot match: its values depend on L(μ), the trace on R(μ).
  const GroundSet N3 = GroundSet::first(3);
  SuperclassFunction tr3(N3);
  for (std::size_t k = 0; k < tr3.size(); ++k) tr3.values()[k] = ut_trace(N3, tr3.classes()[k]);
  CHECK_FALSE(module_function(ut_core_style_left(N3), N3) == tr3);
}

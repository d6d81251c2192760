#include "verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rainbow/nestposet.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/restrict.hpp"

namespace rainbow::cli {

namespace {

bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string set_text(const std::vector<Label>& s) {
  std::string r = "{";
  for (std::size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k]);
  return r + "}";
}

std::string part_text(const SetPartition& p) { return p.empty() ? "{}" : arcs_to_string(p.arcs()); }

/// Records the first failure only.
struct Tally {
  SuiteResult r;
  void check(bool ok, const std::string& what) {
    ++r.checked;
    if (!ok && r.ok) {
      r.ok = false;
      r.counterexample = what;
    }
  }
};

void identities(Tally& t, const VerifyOptions& opt) {
  // poset recursions against the closed form, on block posets of noncrossing partitions
  for (int n = 1; n <= std::min(opt.max_n, 6); ++n)
    for (const SetPartition& lam : superclasses(GroundSet::first(n))) {
      if (crs(lam.arcs()) > 0) continue;
      const Poset P = block_poset(lam);
      for (long k = 0; k <= static_cast<long>(P.size()); ++k) {
        const QPoly want = poset_binom(P, k);
        for (std::size_t a = 0; a < P.size(); ++a) {
          const QPoly got = poset_binom_general_recursion(P, a, k);
          t.check(got == want, "poset recursion: lambda=" + part_text(lam) + " k=" + std::to_string(k) +
                                   " element=" + std::to_string(a) + " got " + got.to_string() + " want " +
                                   want.to_string());
        }
      }
    }
  // left/right symmetry on random instances
  std::mt19937_64 rng(20240601);
  for (int n = 3; n <= opt.max_n; ++n)
    for (int trial = 0; trial < 60; ++trial) {
      const GroundSet N = GroundSet::first(n);
      const Label lo = 1 + static_cast<Label>(rng() % static_cast<unsigned>(n));
      const Label hi = lo + static_cast<Label>(rng() % static_cast<unsigned>(n - lo + 1));
      const auto K = GroundSet::range(lo, hi).labels();
      std::vector<int> block(static_cast<std::size_t>(n));
      int blocks = 0;
      for (int s = 0; s < n; ++s) {
        block[static_cast<std::size_t>(s)] = static_cast<int>(rng() % static_cast<unsigned>(blocks + 1));
        if (block[static_cast<std::size_t>(s)] == blocks) ++blocks;
      }
      std::vector<Arc> in, across;
      for (int s = 0; s < n; ++s)
        for (int u = s + 1; u < n; ++u)
          if (block[static_cast<std::size_t>(u)] == block[static_cast<std::size_t>(s)]) {
            const Arc a{s + 1, u + 1};
            const bool i_in = lo <= a.i && a.i <= hi, j_in = lo <= a.j && a.j <= hi;
            if (i_in && j_in) in.push_back(a);
            else if (i_in != j_in) across.push_back(a);
            break;
          }
      const SetPartition lam(N, in), nu(N, across);
      const long ell = static_cast<long>(in.size() + rng() % 3);
      const QPoly r = interference_side(N, K, lam, nu, ell, Side::Right);
      const QPoly l = interference_side(N, K, lam, nu, ell, Side::Left);
      t.check(r == l, "left/right symmetry: K=" + set_text(K) + " lambda=" + part_text(lam) + " nu=" + part_text(nu) +
                          " ell=" + std::to_string(ell) + " right " + r.to_string() + " left " + l.to_string());
    }
  // core tensor products and rainbow-to-core composition, as values
  for (int n = 0; n <= std::min(opt.max_n, 5); ++n) {
    const GroundSet N = GroundSet::first(n);
    for (long k = 0; k <= n; ++k)
      for (long j = 0; j <= k; ++j) {
        const SuperclassFunction lhs = odot(module_function({"core", {{Core{j}, QPoly(1)}}}, N),
                                            module_function({"core", {{Core{k}, QPoly(1)}}}, N));
        const SuperclassFunction rhs = module_function(core_tensor(j, k, n), N);
        for (std::size_t x = 0; x < lhs.size(); ++x)
          t.check(lhs.value(x) == rhs.value(x), "core tensor j=" + std::to_string(j) + " k=" + std::to_string(k) +
                                                    " mu=" + part_text(lhs.classes()[x]) + " lhs " +
                                                    lhs.value(x).to_string() + " rhs " + rhs.value(x).to_string());
      }
    for (int m = 0; m <= opt.max_m; ++m) {
      const RainbowGeometry g = RainbowGeometry::make(n);
      const SuperclassFunction want = restrict_values(g.mu(m), g.N);
      const SuperclassFunction got = evaluate(rainbow::rainbow(g.N, m, RainbowTarget::Superchars), g.N);
      for (std::size_t x = 0; x < want.size(); ++x)
        t.check(got.value(x) == want.value(x), "rainbow n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                                   " mu=" + part_text(want.classes()[x]) + " engine " +
                                                   got.value(x).to_string() + " restriction " +
                                                   want.value(x).to_string());
    }
  }
}

std::vector<long> primes_of(const VerifyOptions& opt) {
  std::vector<long> ps;
  for (long q : opt.qs)
    if (is_small_prime(q) && q <= 7) ps.push_back(q);
  if (ps.empty()) throw std::invalid_argument("oracle suites need a prime --q at most 7");
  return ps;
}

int oracle_cap(long p, const VerifyOptions& opt) { return std::min(opt.max_n, p == 2 ? 5 : p == 3 ? 4 : 3); }

std::uint64_t bell(int n) {
  std::vector<std::uint64_t> row{1};
  for (int k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

void orbits(Tally& t, const VerifyOptions& opt) {
  for (long p : primes_of(opt))
    for (int n = 1; n <= oracle_cap(p, opt); ++n) {
      const oracle::OrbitTable tab = oracle::superclass_orbits(n, static_cast<int>(p), opt.budget);
      const std::string cell = "n=" + std::to_string(n) + " q=" + std::to_string(p);
      t.check(tab.orbits() == bell(n), "orbit count " + cell + " got " + std::to_string(tab.orbits()) + " want " +
                                           std::to_string(bell(n)));
      auto reps = tab.rep;
      auto want = superclasses(GroundSet::first(n));
      std::sort(reps.begin(), reps.end());
      std::sort(want.begin(), want.end());
      t.check(reps == want, "orbit representatives " + cell);
    }
}

void traces(Tally& t, const VerifyOptions& opt) {
  for (long p : primes_of(opt))
    for (int n = 1; n <= oracle_cap(p, opt); ++n) {
      const GroundSet N = GroundSet::first(n);
      for (const SetPartition& mu : superclasses(N)) {
        const oracle::FpMat u = oracle::FpMat::u_of(mu, static_cast<int>(p));
        for (const auto& K : subsets(N.labels())) {
          const long got = oracle::module_trace(oracle::PsiKSpec{K}, u, 1, opt.budget).to_integer();
          const mpz_class want = psiK_value(N, K, mu).eval(p);
          t.check(want == got, "column-set trace K=" + set_text(K) + " mu=" + part_text(mu) + " q=" +
                                   std::to_string(p) + " trace " + std::to_string(got) + " formula " + want.get_str());
        }
        const long got = oracle::module_trace(oracle::UtAlgebra{}, u, 1, opt.budget).to_integer();
        const mpz_class want = ut_trace(N, mu).eval(p);
        t.check(want == got, "ut_N trace mu=" + part_text(mu) + " q=" + std::to_string(p) + " trace " +
                                 std::to_string(got) + " formula " + want.get_str());
      }
    }
}

void solver(Tally& t, const VerifyOptions& opt) {
  for (long q : opt.qs) {
    if (q < 2) throw std::invalid_argument("--q values must be at least 2");
    for (int n = 1; n <= std::min(opt.max_n, 4); ++n)
      for (int m = 0; m <= opt.max_m; ++m) {
        const RainbowGeometry g = RainbowGeometry::make(n);
        const std::vector<mpq_class> c = decompose_at(restrict_values(g.mu(m), g.N), q);
        const Decomposition d = rainbow::rainbow(g.N, m, RainbowTarget::Superchars);
        const auto& cl = superclasses(g.N);
        for (std::size_t x = 0; x < cl.size(); ++x) {
          const mpq_class want(d.coeff(SuperChar{cl[x]}).eval(q));
          t.check(c[x] == want, "rainbow solver n=" + std::to_string(n) + " m=" + std::to_string(m) + " lambda=" +
                                    part_text(cl[x]) + " q=" + std::to_string(q) + " solver " + c[x].get_str() +
                                    " engine " + want.get_str());
        }
      }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "orbits", "traces", "solver"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  Tally t;
  t.r.name = name;
  if (name == "identities") identities(t, opt);
  else if (name == "orbits") orbits(t, opt);
  else if (name == "traces") traces(t, opt);
  else if (name == "solver") solver(t, opt);
  else throw std::invalid_argument("unknown suite '" + name + "'");
  return t.r;
}

}  // namespace rainbow::cli

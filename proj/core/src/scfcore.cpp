#include "rainbow/scfcore.hpp"

#include <algorithm>
#include <future>
#include <mutex>
#include <thread>

namespace rainbow {

namespace {

struct ArcTerm {
  bool zero = false;
  bool hit = false;  // arc itself lies in μ
  long e = 0;
};

ArcTerm arc_term(const Arc& a, const std::vector<Arc>& mu, const GroundSet& ambient) {
  ArcTerm t;
  for (const Arc& m : mu) {
    if ((m.i == a.i && m.j < a.j) || (m.j == a.j && m.i > a.i)) {
      t.zero = true;
      return t;
    }
    if (m == a) t.hit = true;
    if (a.i < m.i && m.j < a.j) --t.e;
  }
  auto lo = std::upper_bound(ambient.begin(), ambient.end(), a.i);
  auto hi = std::lower_bound(ambient.begin(), ambient.end(), a.j);
  t.e += hi > lo ? hi - lo : 0;
  return t;
}

}  // namespace

QPoly superchar_value(const std::vector<Arc>& lambda, const SetPartition& mu, const GroundSet& ambient) {
  QPoly v(1);
  const QPoly qm1 = QPoly::q() - QPoly(1);
  for (const Arc& a : lambda) {
    ArcTerm t = arc_term(a, mu.arcs(), ambient);
    if (t.zero) return {};
    QPoly f = (t.hit ? QPoly(-1) : qm1).shifted(static_cast<unsigned>(t.e));
    v *= f;
  }
  return v;
}

QPoly superchar_value_direct(const SetPartition& lambda, const SetPartition& mu, const GroundSet& ambient) {
  long both = 0;
  for (const Arc& a : lambda.arcs()) {
    for (const Arc& m : mu.arcs())
      if ((m.i == a.i && m.j < a.j) || (m.j == a.j && m.i > a.i)) return {};
    both += mu.contains(a);
  }
  long e = nst_points(lambda.arcs(), ambient.labels()) - nst(lambda.arcs(), mu.arcs());
  QPoly v = (QPoly::q() - QPoly(1)).pow(static_cast<unsigned>(static_cast<long>(lambda.size()) - both));
  if (both % 2) v = -v;
  return v.shifted(static_cast<unsigned>(e));
}

mpz_class superchar_value_at(const std::vector<Arc>& lambda, const std::vector<Arc>& mu, const GroundSet& ambient, long q) {
  mpz_class v = 1, p;
  for (const Arc& a : lambda) {
    ArcTerm t = arc_term(a, mu, ambient);
    if (t.zero) return 0;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(t.e));
    v *= t.hit ? mpz_class(-p) : mpz_class(p * (q - 1));
  }
  return v;
}

// --- superclass functions ---

const std::vector<SetPartition>& superclasses(const GroundSet& K) {
  static std::mutex mu;
  static std::map<GroundSet, std::unique_ptr<std::vector<SetPartition>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[K];
  if (!slot) slot = std::make_unique<std::vector<SetPartition>>(enumerate_partitions(K));
  return *slot;
}

SuperclassFunction::SuperclassFunction(GroundSet K) : ground_(std::move(K)) {
  values_.assign(superclasses(ground_).size(), QPoly());
}

SuperclassFunction::SuperclassFunction(GroundSet K, std::vector<QPoly> values)
    : ground_(std::move(K)), values_(std::move(values)) {
  if (values_.size() != superclasses(ground_).size())
    throw std::invalid_argument("superclass function needs one value per set partition");
}

const std::vector<SetPartition>& SuperclassFunction::classes() const { return superclasses(ground_); }

std::size_t SuperclassFunction::index_of(const SetPartition& mu) const {
  const auto& cl = classes();
  for (std::size_t k = 0; k < cl.size(); ++k)
    if (cl[k].arcs() == mu.arcs()) return k;
  throw std::invalid_argument("'" + arcs_to_string(mu.arcs()) + "' is not a superclass of this ground set");
}

const QPoly& SuperclassFunction::value(const SetPartition& mu) const { return values_[index_of(mu)]; }

SuperclassFunction restrict_values(const ArcMultiset& lambda, const GroundSet& K) {
  if (!is_subset(K.labels(), lambda.ground().labels()))
    throw std::invalid_argument("restriction target is not a subset of the ambient ground set");
  SuperclassFunction f(K);
  const auto& cl = f.classes();
  for (std::size_t k = 0; k < cl.size(); ++k) f.values()[k] = superchar_value(lambda.arcs(), cl[k], lambda.ground());
  return f;
}

SuperclassFunction superchar_function(const SetPartition& lambda) {
  return restrict_values(lambda.as_multiset(), lambda.ground());
}

SuperclassFunction odot(const SuperclassFunction& f, const SuperclassFunction& g) {
  if (!(f.ground() == g.ground())) throw std::invalid_argument("odot: ground sets differ");
  SuperclassFunction h(f.ground());
  for (std::size_t k = 0; k < f.size(); ++k) h.values()[k] = f.value(k) * g.value(k);
  return h;
}

// --- decompositions ---

namespace {

template <class T>
std::string join(const std::vector<T>& s, char open, char close) {
  std::string r(1, open);
  for (std::size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k]);
  return r + close;
}

struct LabelPrinter {
  std::string operator()(const SuperChar& x) const { return x.lambda.empty() ? "{}" : arcs_to_string(x.lambda.arcs()); }
  std::string operator()(const PsiK& x) const { return "V^" + join(x.K, '{', '}'); }
  std::string operator()(const PsiHook& x) const { return "V^" + join(x.K, '{', '}') + "<-" + join(x.J, '{', '}'); }
  std::string operator()(const FlippedK& x) const { return "W^" + join(x.K, '{', '}'); }
  std::string operator()(const Core& x) const { return "V^" + std::to_string(x.k); }
  std::string operator()(const Peel& x) const {
    return "V^(" + std::to_string(x.b) + ";" + std::to_string(x.f) + ") x R^" + std::to_string(x.rainbow);
  }
  std::string operator()(const Onion& x) const { return "V^(" + join(x.b, '(', ')') + ";" + join(x.f, '(', ')') + ")"; }
  std::string operator()(const Rainbow& x) const { return "R^" + std::to_string(x.m); }
};

}  // namespace

std::string label_to_string(const ModuleLabel& l) { return std::visit(LabelPrinter{}, l); }

void Decomposition::add(const ModuleLabel& l, const QPoly& c) {
  if (c.is_zero()) return;
  auto it = terms.find(l);
  if (it == terms.end()) {
    terms.emplace(l, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

QPoly Decomposition::coeff(const ModuleLabel& l) const {
  auto it = terms.find(l);
  return it == terms.end() ? QPoly() : it->second;
}

SuperclassFunction evaluate(const Decomposition& d, const GroundSet& K) {
  SuperclassFunction f(K);
  const auto& cl = f.classes();
  for (const auto& [label, c] : d.terms) {
    const auto* sc = std::get_if<SuperChar>(&label);
    if (!sc) throw std::invalid_argument("evaluate needs a supercharacter-basis decomposition");
    for (std::size_t k = 0; k < cl.size(); ++k) f.values()[k] += c * superchar_value(sc->lambda.arcs(), cl[k], K);
  }
  return f;
}

// --- exact solver ---

CharTable::CharTable(std::size_t n, long q) : n_(n), q_(q) {
  const GroundSet g = GroundSet::first(static_cast<int>(n));
  classes_ = &superclasses(g);
  const std::size_t B = classes_->size();
  m_.resize(B * B);
  for (std::size_t mu = 0; mu < B; ++mu)
    for (std::size_t nu = 0; nu < B; ++nu)
      m_[mu * B + nu] = superchar_value_at((*classes_)[nu].arcs(), (*classes_)[mu].arcs(), g, q);

  // Gauss-Jordan on [M | I]; rows are skipped where the pivot column is already zero.
  std::vector<mpq_class> a(B * B), inv(B * B);
  for (std::size_t k = 0; k < B * B; ++k) a[k] = m_[k];
  for (std::size_t k = 0; k < B; ++k) inv[k * B + k] = 1;
  for (std::size_t c = 0; c < B; ++c) {
    std::size_t p = c;
    while (p < B && sgn(a[p * B + c]) == 0) ++p;
    if (p == B)
      throw SolverError(SolverError::Kind::Singular,
                        "character table singular at n=" + std::to_string(n) + " q=" + std::to_string(q));
    if (p != c)
      for (std::size_t k = 0; k < B; ++k) {
        std::swap(a[p * B + k], a[c * B + k]);
        std::swap(inv[p * B + k], inv[c * B + k]);
      }
    const mpq_class piv = a[c * B + c];
    for (std::size_t k = 0; k < B; ++k) {
      if (sgn(a[c * B + k])) a[c * B + k] /= piv;
      if (sgn(inv[c * B + k])) inv[c * B + k] /= piv;
    }
    std::vector<std::size_t> nzA, nzI;
    for (std::size_t k = 0; k < B; ++k) {
      if (sgn(a[c * B + k])) nzA.push_back(k);
      if (sgn(inv[c * B + k])) nzI.push_back(k);
    }
    for (std::size_t r = 0; r < B; ++r) {
      if (r == c || sgn(a[r * B + c]) == 0) continue;
      const mpq_class f = a[r * B + c];
      for (auto k : nzA) a[r * B + k] -= f * a[c * B + k];
      for (auto k : nzI) inv[r * B + k] -= f * inv[c * B + k];
    }
  }
  inv_ = std::move(inv);
}

std::shared_ptr<const CharTable> CharTable::get(std::size_t n, long q) {
  if (n > kMaxSolveSize)
    throw SolverError(SolverError::Kind::TooLarge, "solver limited to ground sets of size " + std::to_string(kMaxSolveSize));
  static std::mutex mu;
  static std::map<std::pair<std::size_t, long>, std::shared_future<std::shared_ptr<const CharTable>>> cache;
  std::shared_future<std::shared_ptr<const CharTable>> fut;
  std::promise<std::shared_ptr<const CharTable>> prom;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, q});
    if (it == cache.end()) {
      fut = prom.get_future().share();
      cache.emplace(std::make_pair(n, q), fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      prom.set_value(std::make_shared<const CharTable>(n, q));
    } catch (...) {
      prom.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

std::vector<mpq_class> CharTable::solve(const std::vector<mpq_class>& f) const {
  const std::size_t B = size();
  if (f.size() != B) throw std::invalid_argument("right-hand side has the wrong length");
  std::vector<mpq_class> c(B);
  for (std::size_t r = 0; r < B; ++r)
    for (std::size_t k = 0; k < B; ++k)
      if (sgn(f[k]) && sgn(inv_[r * B + k])) c[r] += inv_[r * B + k] * f[k];
  return c;
}

std::vector<mpq_class> decompose_values(const GroundSet& K, const std::vector<mpq_class>& values, long q) {
  return CharTable::get(K.size(), q)->solve(values);
}

std::vector<mpq_class> decompose_at(const SuperclassFunction& f, long q) {
  std::vector<mpq_class> v(f.size());
  const mpq_class qq(q);
  for (std::size_t k = 0; k < f.size(); ++k) v[k] = f.value(k).eval(qq);
  return decompose_values(f.ground(), v, q);
}

Decomposition decompose_exact(const SuperclassFunction& f, int degree_bound) {
  if (degree_bound < 0) degree_bound = 0;
  const std::size_t npts = static_cast<std::size_t>(degree_bound) + 2;
  const auto primes = sample_primes(npts);
  std::vector<std::vector<mpq_class>> sols(npts);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < npts; start += workers) {
    std::vector<std::future<std::vector<mpq_class>>> jobs;
    for (std::size_t k = start; k < std::min(npts, start + workers); ++k)
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                [&f, q = primes[k]] { return decompose_at(f, q); }));
    for (std::size_t k = start; k < std::min(npts, start + workers); ++k) sols[k] = jobs[k - start].get();
  }
  Decomposition d;
  d.basis = "supercharacter";
  const auto& cl = f.classes();
  for (std::size_t nu = 0; nu < cl.size(); ++nu) {
    std::vector<std::pair<mpz_class, mpq_class>> pts;
    for (std::size_t k = 0; k + 1 < npts; ++k) pts.emplace_back(primes[k], sols[k][nu]);
    QPoly c;
    try {
      c = interpolate(pts, true);
    } catch (const InterpolationError& e) {
      throw SolverError(SolverError::Kind::NonPolynomial,
                        "coefficient of " + arcs_to_string(cl[nu].arcs()) + " is not an integer polynomial: " + e.what());
    }
    if (c.eval(mpq_class(primes.back())) != sols.back()[nu])
      throw SolverError(SolverError::Kind::NonPolynomial,
                        "coefficient of '" + arcs_to_string(cl[nu].arcs()) + "' fails the held-out check; raise the degree bound");
    d.add(SuperChar{cl[nu]}, c);
  }
  return d;
}

}  // namespace rainbow

#include "rainbow/restrict.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rainbow {

namespace {

void require_subset(const std::vector<Label>& K, const GroundSet& N, const char* what) {
  for (std::size_t t = 0; t < K.size(); ++t)
    if (!N.contains(K[t]) || (t > 0 && K[t - 1] >= K[t]))
      throw std::invalid_argument(std::string(what) + ": not a sorted subset of the ground set");
}

QPoly qpow(long e) {
  if (e < 0) throw std::domain_error("negative power of q in a polynomial coefficient");
  return QPoly::q_pow(static_cast<unsigned>(e));
}

QPoly qm1_pow(long e) { return (QPoly::q() - QPoly(1)).pow(static_cast<unsigned>(e)); }

QLaurent laurent(const QPoly& p, long shift) { return QLaurent::monomial(1, shift) * QLaurent(p); }

std::vector<std::size_t> merge_unique(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

SetPartition restrict_to(const SetPartition& mu, const GroundSet& S) {
  return SetPartition(S, arcs_within(mu.arcs(), S.labels()));
}

bool interval_in(const GroundSet& N, const std::vector<Label>& K) {
  if (K.empty()) return true;
  std::size_t a = N.index_of(K.front());
  for (std::size_t t = 0; t < K.size(); ++t)
    if (a + t >= N.size() || N[a + t] != K[t]) return false;
  return true;
}

}  // namespace

// --- column-set modules ---

Decomposition psiK(const GroundSet& N, const std::vector<Label>& K) {
  require_subset(K, N, "psiK");
  Decomposition d{"supercharacter", {}};
  for (const SetPartition& lam : superclasses(N)) {
    auto L = lefts(lam.arcs());
    if (!is_subset(L, K)) continue;
    d.add(SuperChar{lam}, qpow(nst(lam.arcs(), lam.arcs()) + nst_points(lam.arcs(), set_minus(K, L))));
  }
  return d;
}

QPoly psiK_value(const GroundSet& N, const std::vector<Label>& K, const SetPartition& mu) {
  auto L = lefts(mu.arcs());
  if (!set_intersect(L, K).empty()) return {};
  return qpow(wt_up(set_minus(N.labels(), L), K));
}

Decomposition psi_hook(const GroundSet& N, const std::vector<Label>& K, const std::vector<Label>& J) {
  require_subset(K, N, "psi_hook");
  require_subset(J, N, "psi_hook");
  Decomposition d{"supercharacter", {}};
  for (const auto& [label, c] : psiK(N, K).terms)
    if (rights(std::get<SuperChar>(label).lambda.arcs()) == J) d.add(label, c);
  return d;
}

Decomposition endpoint_refine(const GroundSet& N, const std::vector<Label>& K, const std::vector<Label>& J) {
  require_subset(K, N, "endpoint_refine");
  require_subset(J, N, "endpoint_refine");
  Decomposition d{"psiHook", {}};
  for (const auto& I : subsets_of_size(K, J.size())) {
    if (psi_hook(N, I, J).terms.empty()) continue;
    auto rest = set_minus(K, I);
    d.add(PsiHook{I, J}, qpow(wt_up(J, rest) - wt_up(I, rest)));
  }
  return d;
}

Decomposition flippedK(const GroundSet& N, const std::vector<Label>& K) {
  require_subset(K, N, "flippedK");
  std::vector<Label> wK;
  for (Label x : K) wK.push_back(N.w0(x));
  std::sort(wK.begin(), wK.end());
  Decomposition d{"supercharacter", {}};
  for (const auto& [label, c] : psiK(N, wK).terms) d.add(SuperChar{dagger(std::get<SuperChar>(label).lambda)}, c);
  return d;
}

QPoly flippedK_value(const GroundSet& N, const std::vector<Label>& K, const SetPartition& mu) {
  auto R = rights(mu.arcs());
  if (!set_intersect(R, K).empty()) return {};
  return qpow(wt_down(set_minus(N.labels(), R), K));
}

// --- core modules ---

Decomposition core(const GroundSet& N, long k) {
  Decomposition d{"supercharacter", {}};
  if (k < 0 || k > static_cast<long>(N.size())) return d;
  for (const SetPartition& lam : superclasses(N)) {
    long r = static_cast<long>(lam.size());
    if (r > k) continue;
    d.add(SuperChar{lam}, poset_binom(block_poset(uncross(lam)), k - r).shifted(static_cast<unsigned>(nst(lam.arcs(), lam.arcs()))));
  }
  return d;
}

QPoly core_value(const GroundSet& N, long k, const SetPartition& mu) {
  return qbinom(static_cast<long>(N.size() - mu.size()), k).shifted(static_cast<unsigned>(choose2(k)));
}

Decomposition core_tensor(long j, long k, long n) {
  if (!(0 <= j && j <= k && k <= n)) throw std::invalid_argument("core_tensor needs 0 <= j <= k <= n");
  Decomposition d{"core", {}};
  for (long m = 0; m <= j && k + m <= n; ++m)
    d.add(Core{k + m}, qmultinom({k + m - j, m, j - m}).shifted(static_cast<unsigned>(choose2(j - m))));
  return d;
}

SuperclassFunction module_function(const Decomposition& d, const GroundSet& N) {
  SuperclassFunction f(N);
  const auto& cl = f.classes();
  for (const auto& [label, c] : d.terms) {
    std::function<QPoly(const SetPartition&)> val;
    if (auto* x = std::get_if<PsiK>(&label))
      val = [&, K = x->K](const SetPartition& mu) { return psiK_value(N, K, mu); };
    else if (auto* x = std::get_if<FlippedK>(&label))
      val = [&, K = x->K](const SetPartition& mu) { return flippedK_value(N, K, mu); };
    else if (auto* x = std::get_if<Core>(&label))
      val = [&, k = x->k](const SetPartition& mu) { return core_value(N, k, mu); };
    else if (auto* x = std::get_if<SuperChar>(&label))
      val = [&, lam = x->lambda](const SetPartition& mu) { return superchar_value(lam.arcs(), mu, N); };
    else if (auto* x = std::get_if<PsiHook>(&label)) {
      SuperclassFunction h = evaluate(psi_hook(N, x->K, x->J), N);
      val = [h](const SetPartition& mu) { return h.value(mu); };
    } else
      throw std::invalid_argument("module_function: label " + label_to_string(label) + " needs a geometry");
    for (std::size_t t = 0; t < cl.size(); ++t) f.values()[t] += c * val(cl[t]);
  }
  return f;
}

// --- rainbows ---

RainbowGeometry RainbowGeometry::make(int n) {
  if (n < 0) throw std::invalid_argument("rainbow geometry needs n >= 0");
  RainbowGeometry g;
  g.nm = 1;
  g.np = n + 2;
  g.N = GroundSet::range(2, n + 1);
  g.ambient = GroundSet::first(n + 2);
  return g;
}

ArcMultiset RainbowGeometry::mu(int m) const {
  ArcMultiset out(ambient, {});
  out.add({nm, np}, m);
  return out;
}

Decomposition rainbow(const GroundSet& N, long m, RainbowTarget target) {
  if (m < 0) throw std::invalid_argument("rainbow multiplicity must be nonnegative");
  const long n = static_cast<long>(N.size());
  const QPoly pre = qm1_pow(m);
  if (target == RainbowTarget::Core) {
    Decomposition d{"core", {}};
    for (long k = 0; k <= std::min(m, n); ++k) d.add(Core{k}, pre * qphi(m, k));
    return d;
  }
  Decomposition d{"supercharacter", {}};
  for (const SetPartition& lam : superclasses(N)) {
    long r = static_cast<long>(lam.size());
    if (r > m) continue;
    Poset P = block_poset(uncross(lam));
    QPoly s;
    for (long k = r; k <= m; ++k) s += qphi(m, k) * poset_binom(P, k - r);
    d.add(SuperChar{lam}, (pre * s).shifted(static_cast<unsigned>(nst(lam.arcs(), lam.arcs()))));
  }
  return d;
}

// --- interference ---

Decomposition interference_psi(const GroundSet& Kbar, const std::vector<Label>& K, const std::vector<Arc>& nu, long ell) {
  require_subset(K, Kbar, "interference");
  if (ell < 0) throw std::invalid_argument("interference multiplicity must be nonnegative");
  for (const Arc& a : nu)
    if (Kbar.contains(a.i) && Kbar.contains(a.j)) throw std::invalid_argument("interference: nu has an arc inside K-bar");
  const auto X = set_intersect(lefts(nu), K);
  const long gap = static_cast<long>(Kbar.size() - K.size());
  const long x = static_cast<long>(X.size());
  Decomposition d{"psiK", {}};
  for (const auto& J : subsets(set_minus(K, X))) {
    long j = static_cast<long>(J.size());
    if (j > ell) continue;
    d.add(PsiK{J}, (qm1_pow(ell) * qphi(ell, j)).shifted(static_cast<unsigned>(ell * gap + wt_down(X, J) + (ell - j) * x)));
  }
  return d;
}

Decomposition interference_hooks(const GroundSet& K, const std::vector<Arc>& nu, const std::vector<Label>& J) {
  require_subset(J, K, "interference_hooks");
  for (const Arc& a : nu)
    if (K.contains(a.i) && K.contains(a.j)) throw std::invalid_argument("interference: nu has an arc inside K");
  const auto XR = set_intersect(rights(nu), K.labels());
  std::map<std::pair<std::vector<Label>, std::vector<Label>>, std::vector<const SetPartition*>> by_ends;
  for (const SetPartition& lam : superclasses(K)) by_ends[{lefts(lam.arcs()), rights(lam.arcs())}].push_back(&lam);
  Decomposition d{"supercharacter", {}};
  for (const auto& I : subsets(set_minus(K.labels(), XR)))
    for (const auto& Jp : subsets_of_size(J, I.size())) {
      auto it = by_ends.find(std::make_pair(Jp, I));
      if (it == by_ends.end()) continue;
      auto rest = set_minus(J, Jp);
      long e = wt_up(XR, I) + wt_up(XR, rest) + wt_up(I, rest) - wt_up(Jp, rest);
      for (const SetPartition* lam : it->second)
        d.add(SuperChar{*lam}, laurent(QPoly(1), e + nst(lam->arcs(), lam->arcs())).to_poly());
    }
  return d;
}

Decomposition interference_superchars(const GroundSet& N, const GroundSet& K, const SetPartition& nu, long ell) {
  require_subset(K.labels(), N, "interference_superchars");
  if (K.empty() || !interval_in(N, K.labels())) throw std::invalid_argument("interference: K must be an interval of N");
  if (N.index_of(K.labels().front()) == 0 || N.index_of(K.labels().back()) + 1 == N.size())
    throw std::invalid_argument("interference: K needs anchors on both sides in N");
  if (!arcs_within(nu.arcs(), K.labels()).empty()) throw std::invalid_argument("interference: nu has an arc inside K");
  const long xl = static_cast<long>(set_intersect(lefts(nu.arcs()), K.labels()).size());
  long over = 0;
  for (const Arc& a : nu.arcs()) over += (a.i < K.labels().front() && a.j > K.labels().back());
  Decomposition d{"supercharacter", {}};
  for (const SetPartition& lam : superclasses(K)) {
    long r = static_cast<long>(lam.size());
    if (r > ell) continue;
    std::vector<Arc> g = lam.arcs();
    g.insert(g.end(), nu.arcs().begin(), nu.arcs().end());
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end() || !is_set_partition(g)) continue;
    SetPartition gam(N, g);
    Poset P = block_poset(uncross(gam));
    auto S = P.with_max_in(K.labels());
    QLaurent s;
    for (long l = r; l <= ell; ++l) s += laurent(qphi(ell, l) * poset_binom(P, S, l - r), (ell - l) * xl - l * over);
    // q^{-l|nu'|} is absorbed by the nesting prefactor only.
    d.add(SuperChar{lam}, (laurent(qm1_pow(ell), nst(g, lam.arcs())) * s).to_poly());
  }
  return d;
}

std::vector<long> interference_side_weights(const GroundSet& N, const std::vector<Label>& K, const SetPartition& lambda,
                                            const SetPartition& nu, Side side) {
  std::vector<Arc> g = lambda.arcs();
  g.insert(g.end(), nu.arcs().begin(), nu.arcs().end());
  Poset P = block_poset(uncross(SetPartition(N, g)));
  std::vector<long> w;
  for (auto a : side == Side::Right ? P.with_max_in(K) : P.with_min_in(K)) w.push_back(P.weight(a));
  std::sort(w.begin(), w.end());
  return w;
}

QPoly interference_side(const GroundSet& N, const std::vector<Label>& K, const SetPartition& lambda,
                        const SetPartition& nu, long ell, Side side) {
  require_subset(K, N, "interference_side");
  std::vector<Arc> g = lambda.arcs();
  g.insert(g.end(), nu.arcs().begin(), nu.arcs().end());
  Poset P = block_poset(uncross(SetPartition(N, g)));
  auto S = side == Side::Right ? P.with_max_in(K) : P.with_min_in(K);
  long x = 0;
  for (const Arc& a : nu.arcs())
    x += side == Side::Right ? std::binary_search(K.begin(), K.end(), a.i) : std::binary_search(K.begin(), K.end(), a.j);
  const long r = static_cast<long>(lambda.size());
  QPoly s;
  for (long l = r; l <= ell; ++l) s += (qphi(ell, l) * poset_binom(P, S, l - r)).shifted(static_cast<unsigned>((ell - l) * x));
  return s;
}

// --- peel, double rainbow, onion ---

bool peel_in_range(const DoubleGeometry& g, long b, long f) {
  const long lt = static_cast<long>(g.lt.size()), gt = static_cast<long>(g.gt.size());
  return 0 <= b && b <= std::min(lt, gt) && b <= f && f <= lt + gt;
}

namespace {

Decomposition peel_unchecked(const DoubleGeometry& g, long b, long f) {
  Decomposition d{"supercharacter", {}};
  for (const SetPartition& nu : superclasses(g.N)) {
    long r = static_cast<long>(nu.size());
    if (r > f || static_cast<long>(region_select(nu.arcs(), g.lt, g.gt).size()) != b ||
        !arcs_within(nu.arcs(), g.eq).empty())
      continue;
    Poset P = block_poset(uncross(nu));
    auto S = merge_unique(P.with_max_in(g.lt), P.with_min_in(g.gt));
    d.add(SuperChar{nu}, poset_binom(P, S, f - r).shifted(static_cast<unsigned>(nst(nu.arcs(), nu.arcs()))));
  }
  return d;
}

}  // namespace

Decomposition peel(const DoubleGeometry& g, long b, long f) {
  if (!peel_in_range(g, b, f))
    throw std::invalid_argument("peel parameters out of range: b=" + std::to_string(b) + " f=" + std::to_string(f));
  return peel_unchecked(g, b, f);
}

QPoly peel_value(const DoubleGeometry& g, long b, long f, const SetPartition& mu) {
  QPoly v;
  for (const auto& [label, c] : peel(g, b, f).terms)
    v += c * superchar_value(std::get<SuperChar>(label).lambda.arcs(), mu, g.N);
  return v;
}

long anchor_nestings(const ArcMultiset& mu, const std::vector<Label>& anchors) { return nst_points(mu.arcs(), anchors); }

Decomposition double_rainbow(const DoubleGeometry& g, long m, long ell, DoubleTarget target) {
  g.validate();
  const ArcMultiset mu = g.mu(static_cast<int>(m), static_cast<int>(ell));
  const long pre = anchor_nestings(mu, g.anchors());
  if (target == DoubleTarget::Peel) {
    Decomposition d{"peel", {}};
    for (long f = 0; f <= m; ++f)
      for (long b = 0; b <= f; ++b)
        if (peel_in_range(g, b, f))
          d.add(Peel{b, f, m - f + ell}, (qm1_pow(f) * qphi(m, f)).shifted(static_cast<unsigned>(pre + (m - f) * b)));
    return d;
  }
  const auto le = g.le();
  Decomposition d{"supercharacter", {}};
  for (const SetPartition& gam : superclasses(g.N)) {
    const long geq = static_cast<long>(arcs_within(gam.arcs(), g.eq).size());
    const long gne = static_cast<long>(gam.size()) - geq;
    if (gne > m) continue;
    const long le_gt = static_cast<long>(region_select(gam.arcs(), le, g.gt).size());
    const long eq_gt = static_cast<long>(region_select(gam.arcs(), g.eq, g.gt).size());
    Poset P = block_poset(uncross(gam));
    auto S1 = merge_unique(P.with_max_in(g.lt), P.with_min_in(g.gt));
    auto S2 = P.with_max_in(g.eq);
    QLaurent tot;
    for (long f = gne; f <= m; ++f) {
      QPoly a = poset_binom(P, S1, f - gne);
      if (a.is_zero()) continue;
      for (long l = geq; l <= m - f + ell; ++l) {
        QPoly c = qphi(m, f) * qphi(m - f + ell, l) * a * poset_binom(P, S2, l - geq);
        tot += laurent(c, (m - f - l) * le_gt + ell * eq_gt);
      }
    }
    if (tot.is_zero()) continue;
    // Negative powers inside tot are absorbed by the prefactor only.
    d.add(SuperChar{gam}, (laurent(qm1_pow(m + ell), pre + nst(gam.arcs(), gam.arcs())) * tot).to_poly());
  }
  return d;
}

namespace {

QPoly trivial_sum(long m, long ell, long n_ne, long n_eq) {
  QPoly s;
  for (long f = 0; f <= m; ++f)
    for (long l = 0; l <= m - f + ell; ++l)
      s += qphi(m, f) * qphi(m - f + ell, l) * (binomial(n_ne, f) * binomial(n_eq, l));
  return qm1_pow(m + ell) * s;
}

}  // namespace

QPoly double_rainbow_trivial(const DoubleGeometry& g, long m, long ell) {
  const long pre = anchor_nestings(g.mu(static_cast<int>(m), static_cast<int>(ell)), g.anchors());
  const long n_eq = static_cast<long>(g.eq.size());
  return trivial_sum(m, ell, static_cast<long>(g.N.size()) - n_eq, n_eq).shifted(static_cast<unsigned>(pre));
}

QPoly double_rainbow_trivial_generic(long m, long ell, long n_ne, long n_eq) {
  return trivial_sum(m, ell, n_ne, n_eq).shifted(static_cast<unsigned>(2 * m));
}

OnionGeometry onion_from_double(const DoubleGeometry& g) {
  OnionGeometry o;
  o.left = {g.lt};
  o.right = {g.gt};
  o.core = g.eq;
  o.nm = {g.nmm, g.nm};
  o.np = {g.npp, g.np};
  o.layers = {g.N, GroundSet(g.eq)};
  o.N = g.N;
  o.ambient = g.ambient;
  o.validate();
  return o;
}

std::vector<std::pair<std::vector<long>, std::vector<long>>> onion_index(const OnionGeometry& g, const std::vector<long>& m) {
  const std::size_t k = g.depth();
  if (m.size() != k) throw std::invalid_argument("onion: need one multiplicity per layer");
  std::vector<std::pair<std::vector<long>, std::vector<long>>> out;
  std::vector<long> bs, fs;
  long msum = 0, fsum = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == k) {
      out.emplace_back(bs, fs);
      return;
    }
    msum += m[j];
    const long fmax = msum - fsum;
    for (long f = 0; f <= fmax; ++f) {
      const long bmax = j + 1 == k ? 0 : f;
      for (long b = 0; b <= bmax; ++b) {
        if (j + 1 < k) {
          if (!peel_in_range(g.peel_layer(j), b, f)) continue;
        } else if (f > static_cast<long>(g.layers[j].size())) {
          continue;
        }
        bs.push_back(b);
        fs.push_back(f);
        fsum += f;
        rec(j + 1);
        fsum -= f;
        bs.pop_back();
        fs.pop_back();
      }
    }
    msum -= m[j];
  };
  rec(0);
  return out;
}

Decomposition onion(const OnionGeometry& g, const std::vector<long>& m) {
  const std::size_t k = g.depth();
  std::vector<int> mi(m.begin(), m.end());
  const ArcMultiset mu = g.mu(mi);
  std::vector<Label> anchors = g.nm;
  anchors.insert(anchors.end(), g.np.begin(), g.np.end());
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  long total = 0;
  for (long x : m) total += x;
  const long pre = anchor_nestings(mu, anchors);
  Decomposition d{"onion", {}};
  for (const auto& [bs, fs] : onion_index(g, m)) {
    QPoly c = qm1_pow(total);
    long e = pre, mle = 0, fle = 0;
    for (std::size_t j = 0; j < k; ++j) {
      long btail = 0;
      for (std::size_t i = j; i < k; ++i) btail += bs[i];
      mle += m[j];
      c *= qphi(mle - fle, fs[j]);
      // f_j > m_j with b_{j<=} > 0 makes this exponent negative
      e += (m[j] - fs[j]) * btail;
      fle += fs[j];
    }
    d.add(Onion{bs, fs}, laurent(c, e).to_poly());
  }
  return d;
}

QPoly onion_value(const OnionGeometry& g, const std::vector<long>& b, const std::vector<long>& f, const SetPartition& mu) {
  const std::size_t k = g.depth();
  QPoly v(1);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    DoubleGeometry layer = g.peel_layer(j);
    v *= peel_value(layer, b[j], f[j], restrict_to(mu, layer.N));
    if (v.is_zero()) return v;
  }
  return v * core_value(g.layers[k - 1], f[k - 1], restrict_to(mu, g.layers[k - 1]));
}

// --- ut_N ---

QPoly ut_trace(const GroundSet& N, const SetPartition& mu) {
  long e = choose2(static_cast<long>(N.size()));
  for (const Arc& a : mu.arcs()) e -= wt_up(N.labels(), {a.j});
  return qpow(e);
}

Decomposition ut_flipped(const GroundSet& N) {
  Decomposition d{"flippedK", {}};
  for (const auto& A : subsets(N.labels())) {
    auto rest = set_minus(N.labels(), A);
    QPoly c = qm1_pow(static_cast<long>(A.size()));
    for (Label a : A) c *= qint(wt_up(rest, {a}));
    d.add(FlippedK{A}, c);
  }
  return d;
}

Decomposition ut_superchars(const GroundSet& N) {
  Decomposition d{"supercharacter", {}};
  if (N.empty()) {
    d.add(SuperChar{SetPartition(N, {})}, QPoly(1));
    return d;
  }
  const Label top = N.labels().back();
  const auto base = set_minus(N.labels(), {top});
  for (const SetPartition& lam : superclasses(N)) {
    auto R = rights(lam.arcs());
    if (std::binary_search(R.begin(), R.end(), top)) continue;
    QPoly s;
    for (const auto& A : subsets(base)) {
      if (!is_subset(R, A)) continue;
      auto rest = set_minus(N.labels(), A);
      QPoly c = qpow(nst_points(lam.arcs(), set_minus(A, R)));
      for (Label a : A) c *= qpow(wt_up(rest, {a})) - QPoly(1);
      s += c;
    }
    d.add(SuperChar{lam}, s.shifted(static_cast<unsigned>(nst(lam.arcs(), lam.arcs()))));
  }
  return d;
}

Decomposition ut_core_style_left(const GroundSet& N) {
  Decomposition d{"psiK", {}};
  const long n = static_cast<long>(N.size());
  for (const auto& A : subsets(N.labels())) {
    auto rest = set_minus(N.labels(), A);
    QPoly c = qm1_pow(static_cast<long>(A.size())).shifted(static_cast<unsigned>(choose2(n - 1)));
    for (Label a : A) c *= qint(1 + wt_up(rest, {a}));
    d.add(PsiK{A}, c);
  }
  return d;
}

}  // namespace rainbow

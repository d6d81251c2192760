#include "rainbow/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "rainbow/scfcore.hpp"

namespace rainbow::oracle {

namespace {

int inv_mod(int x, int p) {
  for (int y = 1; y < p; ++y)
    if (x * y % p == 1) return y;
  throw OracleError(OracleError::Kind::BadInput, "no inverse mod p");
}

int primitive_root(int p) {
  for (int g = 1; g < p; ++g) {
    int x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;
}

std::uint64_t ipow(std::uint64_t b, unsigned e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned t = 0; t < e; ++t) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

void check_prime(int p) {
  if (p < 2 || p > 251) throw OracleError(OracleError::Kind::BadInput, "modulus out of range");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw OracleError(OracleError::Kind::BadInput, "oracle supports prime q only");
}

}  // namespace

// --- matrices ---

FpMat FpMat::identity(int n, int p) {
  FpMat m(n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::u_of(const SetPartition& mu, int p) {
  const int n = static_cast<int>(mu.ground().size());
  FpMat m = identity(n, p);
  for (const Arc& a : mu.arcs()) m.at(static_cast<int>(mu.ground().index_of(a.i)), static_cast<int>(mu.ground().index_of(a.j))) = 1;
  return m;
}

FpMat FpMat::operator*(const FpMat& o) const {
  FpMat r(n, p);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) = static_cast<std::uint8_t>((r.at(i, j) + x * o.at(k, j)) % p);
    }
  return r;
}

FpMat FpMat::operator-(const FpMat& o) const {
  FpMat r(n, p);
  for (std::size_t t = 0; t < a.size(); ++t) r.a[t] = static_cast<std::uint8_t>((a[t] + p - o.a[t]) % p);
  return r;
}

bool FpMat::is_unitriangular() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

FpMat FpMat::dagger() const {
  FpMat r(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = at(n - 1 - j, n - 1 - i);
  return r;
}

FpMat FpMat::inverse_unitriangular() const {
  // u = I + X with X nilpotent: u^{-1} = Σ_k (-X)^k.
  FpMat minusX = identity(n, p) - *this;
  FpMat term = identity(n, p), sum = identity(n, p);
  for (int k = 1; k < n; ++k) {
    term = term * minusX;
    for (std::size_t t = 0; t < sum.a.size(); ++t) sum.a[t] = static_cast<std::uint8_t>((sum.a[t] + term.a[t]) % p);
  }
  return sum;
}

int FpMat::sw_rank(int r0, int c1) const {
  if (r0 >= n || c1 < 0) return 0;
  std::vector<std::vector<int>> m;
  for (int i = r0; i < n; ++i) {
    std::vector<int> row;
    for (int j = 0; j <= c1; ++j) row.push_back(at(i, j));
    m.push_back(std::move(row));
  }
  int rank = 0;
  const int rows = static_cast<int>(m.size()), cols = c1 + 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(rank)]);
    auto& pr = m[static_cast<std::size_t>(rank)];
    int iv = inv_mod(pr[static_cast<std::size_t>(c)], p);
    for (auto& x : pr) x = x * iv % p;
    for (int r = 0; r < rows; ++r) {
      auto& row = m[static_cast<std::size_t>(r)];
      if (r == rank || !row[static_cast<std::size_t>(c)]) continue;
      int f = row[static_cast<std::size_t>(c)];
      for (int j = 0; j < cols; ++j)
        row[static_cast<std::size_t>(j)] = ((row[static_cast<std::size_t>(j)] - f * pr[static_cast<std::size_t>(j)]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// --- cyclotomic integers ---

CyclotomicInt CyclotomicInt::integer(int p, long long v) {
  CyclotomicInt z(p);
  z.c_[0] = v;
  return z;
}

CyclotomicInt CyclotomicInt::from_counts(int p, const std::vector<long long>& counts) {
  CyclotomicInt z(p);
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (counts[x]) z.add_root(static_cast<int>(x), counts[x]);
  return z;
}

void CyclotomicInt::add_root(int x, long long mult) {
  x = ((x % p_) + p_) % p_;
  if (x < p_ - 1) {
    c_[static_cast<std::size_t>(x)] += mult;
  } else {
    // ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2}).
    for (auto& c : c_) c -= mult;
  }
}

bool CyclotomicInt::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](long long c) { return c == 0; });
}

long CyclotomicInt::to_integer() const {
  if (!is_rational()) throw OracleError(OracleError::Kind::NotRational, "trace " + to_string() + " is not a rational integer");
  return static_cast<long>(c_[0]);
}

CyclotomicInt CyclotomicInt::galois(int k) const {
  CyclotomicInt z(p_);
  for (std::size_t t = 0; t < c_.size(); ++t)
    if (c_[t]) z.add_root(static_cast<int>((static_cast<long long>(t) * k) % p_), c_[t]);
  return z;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (p_ != o.p_) throw OracleError(OracleError::Kind::BadInput, "cyclotomic moduli differ");
  for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
  return *this;
}

std::string CyclotomicInt::to_string() const {
  std::string s;
  for (std::size_t t = 0; t < c_.size(); ++t) {
    if (!c_[t]) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(c_[t]);
    if (t) s += "*z^" + std::to_string(t);
  }
  return s.empty() ? "0" : s;
}

// --- superclass orbits ---

FpMat OrbitTable::state_matrix(std::uint64_t s) const {
  FpMat u = FpMat::identity(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      u.at(i, j) = static_cast<std::uint8_t>(s % static_cast<std::uint64_t>(p));
      s /= static_cast<std::uint64_t>(p);
    }
  return u;
}

std::uint64_t OrbitTable::state_index(const FpMat& u) const {
  std::uint64_t s = 0, w = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      s += w * u.at(i, j);
      w *= static_cast<std::uint64_t>(p);
    }
  return s;
}

OrbitTable superclass_orbits(int n, int p, std::uint64_t budget) {
  check_prime(p);
  if (n < 0 || n > 8) throw OracleError(OracleError::Kind::BadInput, "orbit census supports n <= 8");
  const unsigned dims = static_cast<unsigned>(n * (n - 1) / 2);
  const std::uint64_t states = ipow(static_cast<std::uint64_t>(p), dims, budget);
  if (states > budget)
    throw OracleError(OracleError::Kind::BudgetExceeded, "p^C(n,2) exceeds the state budget");
  OrbitTable t;
  t.n = n;
  t.p = p;
  constexpr std::uint32_t kUnset = ~0u;
  t.orbit_of.assign(states, kUnset);
  const int g = primitive_root(p);
  const GroundSet ground = GroundSet::first(n);

  auto is_rook = [&](const FpMat& u) {
    std::vector<int> rows(static_cast<std::size_t>(n), 0), cols(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int x = u.at(i, j);
        if (!x) continue;
        if (x != 1 || rows[static_cast<std::size_t>(i)]++ || cols[static_cast<std::size_t>(j)]++) return false;
      }
    return true;
  };

  // B×B generators acting on X = u - Id: row_i += row_j, col_j += col_i (i<j), row/column scaling by g.
  auto neighbours = [&](const FpMat& u, const std::function<void(const FpMat&)>& visit) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        FpMat v = u;
        for (int c = j + 1; c < n; ++c) v.at(i, c) = static_cast<std::uint8_t>((v.at(i, c) + u.at(j, c)) % p);
        visit(v);
        FpMat w = u;
        for (int r = 0; r < i; ++r) w.at(r, j) = static_cast<std::uint8_t>((w.at(r, j) + u.at(r, i)) % p);
        visit(w);
      }
    if (g == 1) return;
    for (int i = 0; i < n; ++i) {
      FpMat v = u, w = u;
      for (int c = i + 1; c < n; ++c) v.at(i, c) = static_cast<std::uint8_t>(v.at(i, c) * g % p);
      for (int r = 0; r < i; ++r) w.at(r, i) = static_cast<std::uint8_t>(w.at(r, i) * g % p);
      visit(v);
      visit(w);
    }
  };

  for (std::uint64_t s0 = 0; s0 < states; ++s0) {
    if (t.orbit_of[s0] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(t.rep.size());
    std::deque<std::uint64_t> queue{s0};
    t.orbit_of[s0] = id;
    std::uint64_t count = 0;
    std::optional<FpMat> rook;
    int rooks = 0;
    while (!queue.empty()) {
      std::uint64_t s = queue.front();
      queue.pop_front();
      ++count;
      FpMat u = t.state_matrix(s);
      if (is_rook(u)) {
        ++rooks;
        rook = u;
      }
      neighbours(u, [&](const FpMat& v) {
        std::uint64_t sv = t.state_index(v);
        if (t.orbit_of[sv] == kUnset) {
          t.orbit_of[sv] = id;
          queue.push_back(sv);
        }
      });
    }
    if (rooks != 1) throw std::logic_error("orbit without a unique 0/1 rook representative");
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rook->at(i, j)) arcs.push_back({i + 1, j + 1});
    t.rep.emplace_back(ground, std::move(arcs));
    t.size.push_back(count);
  }
  return t;
}

// --- module traces ---

SetPartition pivot_partition(const FpMat& v) {
  const int n = v.n;
  std::vector<Arc> arcs;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      int d = v.sw_rank(j, i) - v.sw_rank(j + 1, i) - v.sw_rank(j, i - 1) + v.sw_rank(j + 1, i - 1);
      if (d == 1) arcs.push_back({i + 1, j + 1});
    }
  return SetPartition(GroundSet::first(n), std::move(arcs));
}

namespace {

/// Strictly lower matrices supported on the chosen columns (or rows), enumerated by base-p index.
struct LtBasis {
  int n = 0, p = 2;
  std::vector<std::pair<int, int>> pos;
  std::uint64_t count = 0;
  std::vector<std::uint16_t> lam;  // superclass index of pivot_partition, filled on demand

  FpMat matrix(std::uint64_t idx) const {
    FpMat v(n, p);
    for (auto [r, c] : pos) {
      v.at(r, c) = static_cast<std::uint8_t>(idx % static_cast<std::uint64_t>(p));
      idx /= static_cast<std::uint64_t>(p);
    }
    return v;
  }
};

std::shared_ptr<const LtBasis> lt_basis(int n, int p, const std::vector<Label>& S, bool rows, bool classify,
                                        std::uint64_t budget) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::vector<Label>, bool, bool>, std::shared_ptr<const LtBasis>> cache;
  auto key = std::make_tuple(n, p, S, rows, classify);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      // a cached basis still honours the caller's budget
      if (it->second->count > budget) throw OracleError(OracleError::Kind::BudgetExceeded, "module basis exceeds the budget");
      return it->second;
    }
  }
  auto b = std::make_shared<LtBasis>();
  b->n = n;
  b->p = p;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < r; ++c) {
      Label sel = rows ? r + 1 : c + 1;
      if (std::binary_search(S.begin(), S.end(), sel)) b->pos.emplace_back(r, c);
    }
  b->count = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(b->pos.size()), budget);
  if (b->count > budget) throw OracleError(OracleError::Kind::BudgetExceeded, "module basis exceeds the budget");
  if (classify) {
    const auto& cl = superclasses(GroundSet::first(n));
    std::map<std::vector<Arc>, std::uint16_t> index;
    for (std::size_t k = 0; k < cl.size(); ++k) index[cl[k].arcs()] = static_cast<std::uint16_t>(k);
    b->lam.resize(b->count);
    for (std::uint64_t idx = 0; idx < b->count; ++idx) b->lam[idx] = index.at(pivot_partition(b->matrix(idx)).arcs());
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, b);
  return b;
}

void check_labels(const std::vector<Label>& S, int n) {
  for (std::size_t t = 0; t < S.size(); ++t)
    if (S[t] < 1 || S[t] > n || (t > 0 && S[t - 1] >= S[t]))
      throw OracleError(OracleError::Kind::BadInput, "label set must be a sorted subset of 1..n");
}

/// Visits each fixed basis vector of the left action with its trace exponent tr((u-1)v).
template <class Visit>
void left_fixed(const LtBasis& b, const FpMat& u, Visit&& visit) {
  const int n = b.n, p = b.p;
  for (std::uint64_t idx = 0; idx < b.count; ++idx) {
    FpMat v = b.matrix(idx);
    bool fixed = true;
    for (auto [r, c] : b.pos) {
      int s = 0;
      for (int k = r; k < n; ++k) s += u.at(r, k) * v.at(k, c);
      if (s % p != v.at(r, c)) {
        fixed = false;
        break;
      }
    }
    if (!fixed) continue;
    int t = 0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) t += u.at(i, k) * v.at(k, i);
    visit(idx, t % p);
  }
}

}  // namespace

CyclotomicInt module_trace(const ModuleSpec& spec, const FpMat& u, int theta, std::uint64_t budget) {
  const int n = u.n, p = u.p;
  check_prime(p);
  if (!u.is_unitriangular()) throw OracleError(OracleError::Kind::BadInput, "module_trace needs u in UT_N");
  std::vector<long long> counts(static_cast<std::size_t>(p), 0);
  auto add = [&](int t) { ++counts[static_cast<std::size_t>((static_cast<long long>(t) * theta % p + p) % p)]; };

  if (std::holds_alternative<UtAlgebra>(spec)) {
    const unsigned dims = static_cast<unsigned>(n * (n - 1) / 2);
    const std::uint64_t states = ipow(static_cast<std::uint64_t>(p), dims, budget);
    if (states > budget) throw OracleError(OracleError::Kind::BudgetExceeded, "ut_N exceeds the budget");
    OrbitTable shape;
    shape.n = n;
    shape.p = p;
    long long fixed = 0;
    const FpMat X0 = u - FpMat::identity(n, p);
    for (std::uint64_t s = 0; s < states; ++s) {
      FpMat X = shape.state_matrix(s) - FpMat::identity(n, p);
      if (X0 * X == FpMat(n, p)) ++fixed;
    }
    return CyclotomicInt::integer(p, fixed);
  }

  if (const auto* f = std::get_if<FlippedKSpec>(&spec)) {
    check_labels(f->K, n);
    auto b = lt_basis(n, p, f->K, true, false, budget);
    const FpMat w = u.inverse_unitriangular();
    for (std::uint64_t idx = 0; idx < b->count; ++idx) {
      FpMat v = b->matrix(idx);
      bool fixed = true;
      for (auto [r, c] : b->pos) {
        int s = 0;
        for (int k = 0; k <= c; ++k) s += v.at(r, k) * w.at(k, c);
        if (s % p != v.at(r, c)) {
          fixed = false;
          break;
        }
      }
      if (!fixed) continue;
      int t = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < i; ++k) t += v.at(i, k) * w.at(k, i);
      add(t % p);
    }
    return CyclotomicInt::from_counts(p, counts);
  }

  std::vector<Label> K;
  const std::vector<Label>* J = nullptr;
  bool classify = false;
  if (std::holds_alternative<Regular>(spec)) {
    K = GroundSet::first(n).labels();
  } else if (const auto* k = std::get_if<PsiKSpec>(&spec)) {
    K = k->K;
  } else {
    const auto& h = std::get<PsiHookSpec>(spec);
    K = h.K;
    J = &h.J;
    classify = true;
    check_labels(h.J, n);
  }
  check_labels(K, n);
  auto b = lt_basis(n, p, K, false, classify, budget);
  if (!J) {
    left_fixed(*b, u, [&](std::uint64_t, int t) { add(t); });
  } else {
    const auto& cl = superclasses(GroundSet::first(n));
    std::vector<bool> keep(cl.size());
    for (std::size_t k = 0; k < cl.size(); ++k) keep[k] = rights(cl[k].arcs()) == *J;
    left_fixed(*b, u, [&](std::uint64_t idx, int t) {
      if (keep[b->lam[idx]]) add(t);
    });
  }
  return CyclotomicInt::from_counts(p, counts);
}

std::vector<CyclotomicInt> module_trace_by_lambda(const std::vector<Label>& K, const FpMat& u, int theta,
                                                  std::uint64_t budget) {
  const int n = u.n, p = u.p;
  check_prime(p);
  check_labels(K, n);
  if (!u.is_unitriangular()) throw OracleError(OracleError::Kind::BadInput, "module_trace needs u in UT_N");
  auto b = lt_basis(n, p, K, false, true, budget);
  const std::size_t B = superclasses(GroundSet::first(n)).size();
  std::vector<std::vector<long long>> counts(B, std::vector<long long>(static_cast<std::size_t>(p), 0));
  left_fixed(*b, u, [&](std::uint64_t idx, int t) {
    ++counts[b->lam[idx]][static_cast<std::size_t>((static_cast<long long>(t) * theta % p + p) % p)];
  });
  std::vector<CyclotomicInt> out;
  out.reserve(B);
  for (const auto& c : counts) out.push_back(CyclotomicInt::from_counts(p, c));
  return out;
}

std::vector<mpq_class> numeric_decompose(const std::vector<CyclotomicInt>& values, int n, int p) {
  std::vector<mpq_class> f;
  f.reserve(values.size());
  for (const auto& v : values) f.emplace_back(mpz_class(v.to_integer()));
  return CharTable::get(static_cast<std::size_t>(n), p)->solve(f);
}

ConstancyReport verify_constancy(const std::function<CyclotomicInt(const FpMat&)>& f, const OrbitTable& table) {
  ConstancyReport rep;
  std::vector<CyclotomicInt> at_rep;
  at_rep.reserve(table.orbits());
  for (const auto& mu : table.rep) at_rep.push_back(f(FpMat::u_of(mu, table.p)));
  for (std::uint64_t s = 0; s < table.states(); ++s) {
    FpMat u = table.state_matrix(s);
    CyclotomicInt v = f(u);
    ++rep.checked;
    const auto o = table.orbit_of[s];
    if (!(v == at_rep[o])) {
      rep.ok = false;
      rep.first_violation = "state " + std::to_string(s) + " in orbit of '" + arcs_to_string(table.rep[o].arcs()) +
                            "': " + v.to_string() + " vs " + at_rep[o].to_string();
      return rep;
    }
  }
  return rep;
}

std::uint64_t count_subspaces(int n, int k, int p) {
  check_prime(p);
  if (k < 0 || k > n) return 0;
  const std::uint64_t size = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(n), 1u << 16);
  if (size > (1u << 16)) throw OracleError(OracleError::Kind::BudgetExceeded, "F_p^n too large to enumerate");
  auto combine = [&](std::uint64_t x, std::uint64_t y, int c) {
    std::uint64_t r = 0, w = 1;
    for (int t = 0; t < n; ++t) {
      std::uint64_t d = (x % p + c * (y % p)) % p;
      r += d * w;
      w *= static_cast<std::uint64_t>(p);
      x /= static_cast<std::uint64_t>(p);
      y /= static_cast<std::uint64_t>(p);
    }
    return r;
  };
  using Space = std::vector<bool>;
  std::set<Space> level;
  Space zero(size, false);
  zero[0] = true;
  level.insert(zero);
  for (int d = 0; d < k; ++d) {
    std::set<Space> next;
    for (const Space& S : level)
      for (std::uint64_t x = 0; x < size; ++x) {
        if (S[x]) continue;
        Space T(size, false);
        for (std::uint64_t s = 0; s < size; ++s)
          if (S[s])
            for (int c = 0; c < p; ++c) T[combine(s, x, c)] = true;
        next.insert(std::move(T));
      }
    level = std::move(next);
  }
  return level.size();
}

}  // namespace rainbow::oracle

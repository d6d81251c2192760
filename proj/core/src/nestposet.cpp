#include "rainbow/nestposet.hpp"

#include <algorithm>
#include <stdexcept>

namespace rainbow {

Poset::Poset(std::vector<std::vector<bool>> less) : less_(std::move(less)) {
  const std::size_t n = less_.size();
  for (const auto& row : less_)
    if (row.size() != n) throw std::invalid_argument("poset relation must be square");
  for (std::size_t a = 0; a < n; ++a) {
    if (less_[a][a]) throw std::invalid_argument("poset relation must be irreflexive");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; less_[a][b] && c < n; ++c)
        if (less_[b][c] && !less_[a][c]) throw std::invalid_argument("poset relation must be transitive");
  }
  wt_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) wt_[a] += less_[a][b];
}

Poset Poset::from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw std::invalid_argument("cover references a missing element");
    r[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; r[a][k] && b < n; ++b)
        if (r[k][b]) r[a][b] = true;
  return Poset(std::move(r));
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> c;
  for (std::size_t a = 0; a + 1 < n; ++a) c.emplace_back(a, a + 1);
  return from_covers(n, c);
}

Poset Poset::antichain(std::size_t n) { return from_covers(n, {}); }

long Poset::weight(const std::vector<std::size_t>& A) const {
  long s = 0;
  for (auto a : A) s += wt_[a];
  return s;
}

std::vector<std::size_t> Poset::minimal() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a) {
    bool m = true;
    for (std::size_t b = 0; b < size() && m; ++b) m = !less_[b][a];
    if (m) out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> Poset::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (wt_[a] == 0) out.push_back(a);
  return out;
}

std::vector<std::size_t> Poset::below(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (less_[b][a]) out.push_back(b);
  return out;
}

Poset Poset::without(std::size_t a) const {
  const std::size_t n = size();
  std::vector<std::vector<bool>> r;
  for (std::size_t x = 0; x < n; ++x) {
    if (x == a) continue;
    std::vector<bool> row;
    for (std::size_t y = 0; y < n; ++y)
      if (y != a) row.push_back(less_[x][y]);
    r.push_back(std::move(row));
  }
  Poset p(std::move(r));
  if (!blocks_.empty()) {
    p.blocks_ = blocks_;
    p.blocks_.erase(p.blocks_.begin() + static_cast<long>(a));
  }
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      if (!less_[a][b]) continue;
      bool direct = true;
      for (std::size_t c = 0; c < size() && direct; ++c) direct = !(less_[a][c] && less_[c][b]);
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

std::vector<std::size_t> Poset::with_max_in(const std::vector<Label>& S) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < blocks_.size(); ++a)
    if (std::binary_search(S.begin(), S.end(), rightmost(a))) out.push_back(a);
  return out;
}

std::vector<std::size_t> Poset::with_min_in(const std::vector<Label>& S) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < blocks_.size(); ++a)
    if (std::binary_search(S.begin(), S.end(), leftmost(a))) out.push_back(a);
  return out;
}

Poset block_poset(const SetPartition& lambda) {
  if (crs(lambda.arcs()) != 0)
    throw PartitionError(PartitionError::Kind::Crossing, "block poset needs a noncrossing partition");
  auto bl = blocks(lambda);
  const std::size_t n = bl.size();
  // Noncrossing and disjoint: a sits under b iff b spans strictly around a.
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      r[a][b] = bl[b].size() > 1 && bl[b].front() < bl[a].front() && bl[a].back() < bl[b].back();
  Poset p(std::move(r));
  p.blocks_ = std::move(bl);
  return p;
}

QPoly poset_binom(const Poset& P, const std::vector<std::size_t>& S, long k) {
  if (k < 0 || k > static_cast<long>(S.size())) return {};
  // Elementary symmetric polynomial e_k in the monomials q^{wt(a)}, a ∈ S.
  std::vector<QPoly> e(static_cast<std::size_t>(k) + 1);
  e[0] = QPoly(1);
  std::size_t seen = 0;
  for (auto a : S) {
    ++seen;
    for (std::size_t t = std::min<std::size_t>(seen, static_cast<std::size_t>(k)); t >= 1; --t)
      e[t] += e[t - 1].shifted(static_cast<unsigned>(P.weight(a)));
  }
  return e[static_cast<std::size_t>(k)];
}

QPoly poset_binom(const Poset& P, long k) {
  std::vector<std::size_t> all(P.size());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  return poset_binom(P, all, k);
}

QPoly poset_multinom(const Poset& P, const std::vector<std::pair<long, std::vector<std::size_t>>>& constraints) {
  std::vector<bool> used(P.size(), false);
  for (const auto& [k, S] : constraints)
    for (auto a : S) {
      if (a >= P.size()) throw std::invalid_argument("poset_multinom: element out of range");
      if (used[a]) throw std::invalid_argument("poset_multinom: constraint subsets overlap");
      used[a] = true;
    }
  QPoly r(1);
  for (const auto& [k, S] : constraints) {
    r *= poset_binom(P, S, k);
    if (r.is_zero()) break;
  }
  return r;
}

QPoly poset_binom_complement(const Poset& P, long k) {
  const long n = static_cast<long>(P.size());
  if (k < 0 || k > n) return {};
  // Complements of k-subsets are exactly the (n-k)-subsets.
  return poset_binom(P, n - k);
}

QPoly poset_binom_min_recursion(const Poset& P, std::size_t a, long k) {
  if (!P.below(a).empty()) throw std::invalid_argument("element is not minimal");
  Poset R = P.without(a);
  return poset_binom(R, k - 1).shifted(static_cast<unsigned>(P.weight(a))) + poset_binom(R, k);
}

QPoly poset_binom_general_recursion(const Poset& P, std::size_t a, long k) {
  Poset R = P.without(a);
  auto shift = [a](std::size_t x) { return x > a ? x - 1 : x; };
  std::vector<std::size_t> down, rest;
  for (std::size_t x = 0; x < P.size(); ++x) {
    if (x == a) continue;
    (P.less(x, a) ? down : rest).push_back(shift(x));
  }
  QPoly total;
  for (long j = 0; j <= static_cast<long>(down.size()); ++j) {
    QPoly with_a = poset_multinom(R, {{j, down}, {k - j - 1, rest}}).shifted(static_cast<unsigned>(P.weight(a)));
    QPoly without_a = poset_multinom(R, {{j, down}, {k - j, rest}});
    total += (with_a + without_a).shifted(static_cast<unsigned>(j));
  }
  return total;
}

}  // namespace rainbow

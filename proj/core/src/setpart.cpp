#include "rainbow/setpart.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace rainbow {

namespace {

[[noreturn]] void fail(PartitionError::Kind k, const std::string& msg) { throw PartitionError(k, msg); }

void check_arcs(const GroundSet& ground, const std::vector<Arc>& arcs) {
  for (const Arc& a : arcs) {
    if (a.i >= a.j)
      fail(PartitionError::Kind::Malformed, "arc " + std::to_string(a.i) + "-" + std::to_string(a.j) + " needs i < j");
    if (!ground.contains(a.i) || !ground.contains(a.j))
      fail(PartitionError::Kind::GroundViolation,
           "arc " + std::to_string(a.i) + "-" + std::to_string(a.j) + " leaves the ground set");
  }
}

std::vector<Arc> parse_arcs(const std::string& text) {
  std::vector<Arc> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "{}") continue;
    auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
      fail(PartitionError::Kind::Malformed, "bad arc token '" + tok + "'");
    try {
      std::size_t p1 = 0, p2 = 0;
      int i = std::stoi(tok.substr(0, dash), &p1);
      int j = std::stoi(tok.substr(dash + 1), &p2);
      if (p1 != dash || p2 != tok.size() - dash - 1) throw std::invalid_argument(tok);
      out.push_back({i, j});
    } catch (const std::logic_error&) {
      fail(PartitionError::Kind::Malformed, "bad arc token '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

GroundSet::GroundSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] <= 0) fail(PartitionError::Kind::GroundViolation, "ground labels must be positive");
    if (k > 0 && labels_[k - 1] >= labels_[k])
      fail(PartitionError::Kind::GroundViolation, "ground labels must be strictly increasing");
  }
}

GroundSet GroundSet::range(Label lo, Label hi) {
  std::vector<Label> v;
  for (Label x = lo; x <= hi; ++x) v.push_back(x);
  return GroundSet(std::move(v));
}

bool GroundSet::contains(Label x) const { return std::binary_search(labels_.begin(), labels_.end(), x); }

std::size_t GroundSet::index_of(Label x) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
  if (it == labels_.end() || *it != x)
    fail(PartitionError::Kind::GroundViolation, "label " + std::to_string(x) + " not in ground set");
  return static_cast<std::size_t>(it - labels_.begin());
}

ArcMultiset::ArcMultiset(GroundSet ground, std::vector<Arc> arcs) : ground_(std::move(ground)), arcs_(std::move(arcs)) {
  check_arcs(ground_, arcs_);
  std::sort(arcs_.begin(), arcs_.end());
}

void ArcMultiset::add(Arc a, int mult) {
  check_arcs(ground_, {a});
  for (int t = 0; t < mult; ++t) arcs_.push_back(a);
  std::sort(arcs_.begin(), arcs_.end());
}

bool is_set_partition(const std::vector<Arc>& arcs) {
  std::vector<Label> l, r;
  for (const Arc& a : arcs) {
    if (a.i >= a.j) return false;
    l.push_back(a.i);
    r.push_back(a.j);
  }
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  return std::adjacent_find(l.begin(), l.end()) == l.end() && std::adjacent_find(r.begin(), r.end()) == r.end();
}

SetPartition::SetPartition(GroundSet ground, std::vector<Arc> arcs) : ground_(std::move(ground)), arcs_(std::move(arcs)) {
  check_arcs(ground_, arcs_);
  std::sort(arcs_.begin(), arcs_.end());
  if (!is_set_partition(arcs_))
    fail(PartitionError::Kind::DistinctEndpointViolation,
         "repeated endpoint in '" + arcs_to_string(arcs_) + "'");
}

bool SetPartition::contains(Arc a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

SetPartition parse_partition(const std::string& text, const GroundSet& ground) {
  return SetPartition(ground, parse_arcs(text));
}

ArcMultiset parse_multiset(const std::string& text, const GroundSet& ground) {
  return ArcMultiset(ground, parse_arcs(text));
}

GroundSet parse_ground(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' '; }), t.end());
  try {
    if (t.rfind("N=", 0) == 0) {
      std::vector<Label> v;
      std::istringstream in(t.substr(2));
      std::string tok;
      while (std::getline(in, tok, ','))
        if (!tok.empty()) v.push_back(std::stoi(tok));
      return GroundSet(std::move(v));
    }
    if (t.rfind("n=", 0) == 0) t = t.substr(2);
    std::size_t pos = 0;
    int n = std::stoi(t, &pos);
    if (pos != t.size() || n < 0) throw std::invalid_argument(t);
    return GroundSet::first(n);
  } catch (const std::logic_error&) {
    fail(PartitionError::Kind::Malformed, "bad ground set '" + text + "'");
  }
}

std::string arcs_to_string(const std::vector<Arc>& arcs) {
  std::string s;
  for (const Arc& a : arcs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(a.i) + "-" + std::to_string(a.j);
  }
  return s;
}

std::vector<std::vector<Label>> blocks(const SetPartition& lambda) {
  std::map<Label, Label> next;
  std::vector<bool> has_prev(lambda.ground().size(), false);
  for (const Arc& a : lambda.arcs()) {
    next[a.i] = a.j;
    has_prev[lambda.ground().index_of(a.j)] = true;
  }
  std::vector<std::vector<Label>> out;
  for (std::size_t k = 0; k < lambda.ground().size(); ++k) {
    if (has_prev[k]) continue;
    std::vector<Label> b{lambda.ground()[k]};
    for (auto it = next.find(b.back()); it != next.end(); it = next.find(b.back())) b.push_back(it->second);
    out.push_back(std::move(b));
  }
  return out;
}

SetPartition dagger(const SetPartition& lambda) {
  const GroundSet& g = lambda.ground();
  std::vector<Arc> out;
  out.reserve(lambda.size());
  for (const Arc& a : lambda.arcs()) out.push_back({g.w0(a.j), g.w0(a.i)});
  return SetPartition(g, std::move(out));
}

SetPartition uncross(const SetPartition& lambda) {
  std::vector<Label> L = lefts(lambda.arcs()), R = rights(lambda.arcs());
  std::vector<Label> pts = set_union(L, R);
  std::vector<Label> stack;
  std::vector<Arc> out;
  for (Label x : pts) {
    if (std::binary_search(R.begin(), R.end(), x)) {
      out.push_back({stack.back(), x});
      stack.pop_back();
    }
    if (std::binary_search(L.begin(), L.end(), x)) stack.push_back(x);
  }
  return SetPartition(lambda.ground(), std::move(out));
}

std::vector<Label> lefts(const std::vector<Arc>& arcs) {
  std::vector<Label> v;
  for (const Arc& a : arcs) v.push_back(a.i);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Label> rights(const std::vector<Arc>& arcs) {
  std::vector<Label> v;
  for (const Arc& a : arcs) v.push_back(a.j);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

long nst(const std::vector<Arc>& outer, const std::vector<Arc>& inner) {
  long c = 0;
  for (const Arc& o : outer)
    for (const Arc& a : inner) c += (o.i < a.i && a.j < o.j);
  return c;
}

long nst_points(const std::vector<Arc>& lambda, const std::vector<Label>& points) {
  long c = 0;
  for (const Arc& o : lambda)
    for (Label x : points) c += (o.i < x && x < o.j);
  return c;
}

long crs(const std::vector<Arc>& lambda) {
  long c = 0;
  for (const Arc& a : lambda)
    for (const Arc& b : lambda) c += (a.i < b.i && b.i < a.j && a.j < b.j);
  return c;
}

long wt_up(const std::vector<Label>& C, const std::vector<Label>& A) {
  long c = 0;
  for (Label a : A)
    for (Label x : C) c += (a < x);
  return c;
}

long wt_down(const std::vector<Label>& C, const std::vector<Label>& A) {
  long c = 0;
  for (Label a : A)
    for (Label x : C) c += (x < a);
  return c;
}

std::vector<Arc> region_select(const std::vector<Arc>& arcs, const std::vector<Label>& A, const std::vector<Label>& B) {
  std::vector<Arc> out;
  for (const Arc& a : arcs)
    if (std::find(A.begin(), A.end(), a.i) != A.end() && std::find(B.begin(), B.end(), a.j) != B.end()) out.push_back(a);
  return out;
}

std::vector<Arc> arcs_within(const std::vector<Arc>& arcs, const std::vector<Label>& S) { return region_select(arcs, S, S); }

std::vector<SetPartition> enumerate_partitions(const GroundSet& ground, std::size_t bound) {
  return enumerate_partitions(ground, nullptr, bound);
}

std::vector<SetPartition> enumerate_partitions(const GroundSet& ground,
                                               const std::function<bool(const SetPartition&)>& keep,
                                               std::size_t bound) {
  const std::size_t n = ground.size();
  if (n > bound)
    fail(PartitionError::Kind::BoundExceeded,
         "ground set of size " + std::to_string(n) + " exceeds enumeration bound " + std::to_string(bound));
  std::vector<SetPartition> out;
  // rgs[k] = block of ground[k]; last[b] = most recent element of block b.
  std::vector<int> rgs(n, 0);
  std::vector<Label> last;
  std::vector<Arc> arcs;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      SetPartition p(ground, arcs);
      if (!keep || keep(p)) out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= last.size(); ++b) {
      if (b == last.size()) {
        last.push_back(ground[k]);
        rec(k + 1);
        last.pop_back();
      } else {
        Label prev = last[b];
        arcs.push_back({prev, ground[k]});
        last[b] = ground[k];
        rec(k + 1);
        last[b] = prev;
        arcs.pop_back();
      }
    }
  };
  rec(0);
  return out;
}

std::vector<Label> set_union(const std::vector<Label>& a, const std::vector<Label>& b) {
  std::vector<Label> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Label> set_minus(const std::vector<Label>& a, const std::vector<Label>& b) {
  std::vector<Label> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Label> set_intersect(const std::vector<Label>& a, const std::vector<Label>& b) {
  std::vector<Label> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const std::vector<Label>& a, const std::vector<Label>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::vector<Label>> subsets(const std::vector<Label>& s) {
  std::vector<std::vector<Label>> out;
  const std::size_t n = s.size();
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<Label> v;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1UL) v.push_back(s[k]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Label>> subsets_of_size(const std::vector<Label>& s, std::size_t k) {
  std::vector<std::vector<Label>> out;
  if (k > s.size()) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<Label> v;
    for (auto i : idx) v.push_back(s[i]);
    out.push_back(std::move(v));
    std::size_t p = k;
    while (p > 0 && idx[p - 1] == s.size() - k + p - 1) --p;
    if (p == 0) break;
    ++idx[p - 1];
    for (std::size_t t = p; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

// --- region geometries ---

DoubleGeometry DoubleGeometry::make(int a, int b, int c, bool merge_inner) {
  if (a < 0 || b < 0 || c < 0) fail(PartitionError::Kind::Geometry, "region sizes must be nonnegative");
  if (merge_inner && b > 0) fail(PartitionError::Kind::Geometry, "n- = n+ requires N_= empty");
  if (merge_inner && a == 0 && c == 0) fail(PartitionError::Kind::Geometry, "all anchors would coincide");
  DoubleGeometry g;
  Label next = 0;
  g.nmm = ++next;
  for (int t = 0; t < a; ++t) g.lt.push_back(++next);
  g.nm = a > 0 ? ++next : g.nmm;
  for (int t = 0; t < b; ++t) g.eq.push_back(++next);
  bool np_pending = false;
  if (b == 0 && merge_inner)
    g.np = g.nm;
  else if (c > 0)
    g.np = ++next;
  else
    np_pending = true;
  for (int t = 0; t < c; ++t) g.gt.push_back(++next);
  // With n- = n+ and N_> empty the chain n- = n+ = n++ collapses as well.
  g.npp = (merge_inner && c == 0) ? g.np : ++next;
  if (np_pending) g.np = g.npp;
  g.N = GroundSet(set_union(set_union(g.lt, g.eq), g.gt));
  g.ambient = GroundSet(set_union(g.N.labels(), g.anchors()));
  g.validate();
  return g;
}

std::vector<Label> DoubleGeometry::anchors() const {
  std::vector<Label> v{nmm, nm, np, npp};
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Label> DoubleGeometry::le() const { return set_union(lt, eq); }
std::vector<Label> DoubleGeometry::ge() const { return set_union(eq, gt); }

void DoubleGeometry::validate() const {
  auto bad = [](const std::string& m) { fail(PartitionError::Kind::Geometry, "double geometry: " + m); };
  if (!(nmm <= nm && nm <= np && np <= npp)) bad("anchors out of order");
  if (nmm == npp) bad("outer anchors coincide");
  auto inside = [](const std::vector<Label>& s, Label lo, Label hi) {
    return std::all_of(s.begin(), s.end(), [&](Label x) { return lo < x && x < hi; });
  };
  if (!inside(lt, nmm, nm) || !inside(eq, nm, np) || !inside(gt, np, npp)) bad("region outside its anchors");
  if ((nmm == nm) != lt.empty()) bad("n-- = n- exactly when N_< is empty");
  if ((np == npp) != gt.empty()) bad("n+ = n++ exactly when N_> is empty");
  if (nm == np && !eq.empty()) bad("n- = n+ needs N_= empty");
  if (N.labels() != set_union(set_union(lt, eq), gt)) bad("N is not N_< + N_= + N_>");
  for (Label x : ambient)
    if (!N.contains(x) && x != nmm && x != nm && x != np && x != npp) bad("stray ambient label");
}

ArcMultiset DoubleGeometry::mu(int m, int ell) const {
  if (m < 0 || ell < 0) fail(PartitionError::Kind::Geometry, "multiplicities must be nonnegative");
  if (ell > 0 && nm == np) fail(PartitionError::Kind::Geometry, "inner arc degenerates to a loop");
  ArcMultiset out(ambient, {});
  out.add({nmm, npp}, m);
  if (ell > 0) out.add({nm, np}, ell);
  return out;
}

std::string DoubleGeometry::describe() const {
  auto list = [](const std::vector<Label>& s) {
    std::string r = "{";
    for (std::size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k]);
    return r + "}";
  };
  return "n--=" + std::to_string(nmm) + " N_<=" + list(lt) + " n-=" + std::to_string(nm) + " N_==" + list(eq) +
         " n+=" + std::to_string(np) + " N_>=" + list(gt) + " n++=" + std::to_string(npp);
}

OnionGeometry OnionGeometry::make(const std::vector<int>& left_sizes, const std::vector<int>& right_sizes, int core_size) {
  if (left_sizes.size() != right_sizes.size()) fail(PartitionError::Kind::Geometry, "onion layer size lists differ");
  const std::size_t k = left_sizes.size() + 1;
  OnionGeometry g;
  Label next = 0;
  g.left.resize(k - 1);
  g.right.resize(k - 1);
  g.np.assign(k, 0);
  // An empty side region merges the anchors of consecutive layers.
  g.nm.push_back(++next);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (left_sizes[j] < 0 || right_sizes[j] < 0) fail(PartitionError::Kind::Geometry, "negative layer size");
    for (int t = 0; t < left_sizes[j]; ++t) g.left[j].push_back(++next);
    g.nm.push_back(left_sizes[j] ? ++next : g.nm.back());
  }
  for (int t = 0; t < core_size; ++t) g.core.push_back(++next);
  g.np[k - 1] = ++next;
  for (std::size_t j = k - 1; j-- > 0;) {
    for (int t = 0; t < right_sizes[j]; ++t) g.right[j].push_back(++next);
    g.np[j] = right_sizes[j] ? ++next : g.np[j + 1];
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Label> s = g.core;
    for (std::size_t t = j; t + 1 < k; ++t) s = set_union(set_union(s, g.left[t]), g.right[t]);
    g.layers.emplace_back(std::move(s));
  }
  g.N = g.layers.front();
  g.ambient = GroundSet::first(next);
  g.validate();
  return g;
}

void OnionGeometry::validate() const {
  const std::size_t k = depth();
  if (k == 0 || np.size() != k || layers.size() != k) fail(PartitionError::Kind::Geometry, "onion: empty or ragged");
  // Anchors may coincide only across an empty stretch of ground.
  for (std::size_t j = 0; j < k; ++j) {
    Label lo = nm[j], hi = np[j];
    if (lo > hi || (lo == hi && !layers[j].empty())) fail(PartitionError::Kind::Geometry, "onion: anchors out of order");
    for (Label x : layers[j])
      if (x <= lo || x >= hi) fail(PartitionError::Kind::Geometry, "onion: layer escapes its anchors");
    if (j + 1 < k) {
      if (!is_subset(layers[j + 1].labels(), layers[j].labels()) || !(lo <= nm[j + 1] && np[j + 1] <= hi))
        fail(PartitionError::Kind::Geometry, "onion: layers not nested");
      if ((lo == nm[j + 1]) != left[j].empty() || (hi == np[j + 1]) != right[j].empty())
        fail(PartitionError::Kind::Geometry, "onion: anchors collapse exactly across empty regions");
    }
  }
}

ArcMultiset OnionGeometry::mu(const std::vector<int>& m) const {
  if (m.size() != depth()) fail(PartitionError::Kind::Geometry, "onion: need one multiplicity per layer");
  ArcMultiset out(ambient, {});
  for (std::size_t j = 0; j < depth(); ++j) {
    if (m[j] < 0) fail(PartitionError::Kind::Geometry, "multiplicities must be nonnegative");
    if (m[j] == 0) continue;
    if (nm[j] == np[j]) fail(PartitionError::Kind::Geometry, "onion: layer anchors coincide under a nonzero multiplicity");
    out.add({nm[j], np[j]}, m[j]);
  }
  return out;
}

DoubleGeometry OnionGeometry::peel_layer(std::size_t j) const {
  if (j + 1 >= depth()) fail(PartitionError::Kind::Geometry, "onion: innermost layer has no peel");
  DoubleGeometry g;
  g.lt = left[j];
  g.eq = layers[j + 1].labels();
  g.gt = right[j];
  g.nmm = nm[j];
  g.nm = nm[j + 1];
  g.np = np[j + 1];
  g.npp = np[j];
  g.N = layers[j];
  g.ambient = GroundSet(set_union(g.N.labels(), g.anchors()));
  return g;
}

}  // namespace rainbow

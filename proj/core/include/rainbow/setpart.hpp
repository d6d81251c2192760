#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using Label = int;

/// i⌣j with i < j.
struct Arc {
  Label i = 0;
  Label j = 0;
  auto operator<=>(const Arc&) const = default;
};

class PartitionError : public std::runtime_error {
 public:
  enum class Kind { DistinctEndpointViolation, GroundViolation, Malformed, Crossing, BoundExceeded, Geometry };
  PartitionError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// Strictly increasing positive labels. Labels are kept as given (never renumbered).
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<Label> labels);
  static GroundSet range(Label lo, Label hi);
  static GroundSet first(int n) { return range(1, n); }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<Label>& labels() const { return labels_; }
  Label operator[](std::size_t k) const { return labels_[k]; }
  bool contains(Label x) const;
  /// Position of x; throws GroundViolation when absent.
  std::size_t index_of(Label x) const;
  /// Order-reversing involution w0 on the ground set.
  Label w0(Label x) const { return labels_[size() - 1 - index_of(x)]; }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }
  auto operator<=>(const GroundSet&) const = default;

 private:
  std::vector<Label> labels_;
};

/// Multiset of arcs over a ground set; sorted, repeats allowed.
class ArcMultiset {
 public:
  ArcMultiset() = default;
  ArcMultiset(GroundSet ground, std::vector<Arc> arcs);
  const GroundSet& ground() const { return ground_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  /// Appends mult copies of a.
  void add(Arc a, int mult = 1);
  auto operator<=>(const ArcMultiset&) const = default;

 protected:
  GroundSet ground_;
  std::vector<Arc> arcs_;
};

/// Arc form of a set partition: left endpoints distinct, right endpoints distinct.
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(GroundSet ground, std::vector<Arc> arcs);
  const GroundSet& ground() const { return ground_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool contains(Arc a) const;
  ArcMultiset as_multiset() const { return {ground_, arcs_}; }
  auto operator<=>(const SetPartition&) const = default;

 private:
  GroundSet ground_;
  std::vector<Arc> arcs_;
};

/// Whitespace-separated "i-j" tokens.
SetPartition parse_partition(const std::string& text, const GroundSet& ground);
ArcMultiset parse_multiset(const std::string& text, const GroundSet& ground);
/// Parses "n=6" or "N=2,3,5,7" (also a bare integer n).
GroundSet parse_ground(const std::string& text);
std::string arcs_to_string(const std::vector<Arc>& arcs);
bool is_set_partition(const std::vector<Arc>& arcs);

std::vector<std::vector<Label>> blocks(const SetPartition& lambda);
SetPartition dagger(const SetPartition& lambda);
SetPartition uncross(const SetPartition& lambda);

/// Endpoint sets (sorted, duplicates removed).
std::vector<Label> lefts(const std::vector<Arc>& arcs);
std::vector<Label> rights(const std::vector<Arc>& arcs);

/// nst^λ_μ = #{(i⌣l, j⌣k) ∈ λ×μ : i<j<k<l}, with multiplicity.
long nst(const std::vector<Arc>& outer, const std::vector<Arc>& inner);
/// nst^λ_A = #{(i⌣l, a) ∈ λ×A : i<a<l}.
long nst_points(const std::vector<Arc>& lambda, const std::vector<Label>& points);
/// crs(λ) = #{(i⌣k, j⌣l) ∈ λ×λ : i<j<k<l}.
long crs(const std::vector<Arc>& lambda);
/// wt↑_C(A) = #{(a,c) ∈ A×C : a<c}.
long wt_up(const std::vector<Label>& C, const std::vector<Label>& A);
/// wt↓_C(A) = #{(a,c) ∈ A×C : c<a}.
long wt_down(const std::vector<Label>& C, const std::vector<Label>& A);

/// _Aλ_B = arcs with left endpoint in A and right endpoint in B.
std::vector<Arc> region_select(const std::vector<Arc>& arcs, const std::vector<Label>& A, const std::vector<Label>& B);
/// Arcs with both endpoints in S.
std::vector<Arc> arcs_within(const std::vector<Arc>& arcs, const std::vector<Label>& S);

/// All set partitions of ground in restricted-growth-string order. Each block
/// contributes arcs between consecutive elements.
std::vector<SetPartition> enumerate_partitions(const GroundSet& ground, std::size_t bound = 10);
std::vector<SetPartition> enumerate_partitions(const GroundSet& ground,
                                               const std::function<bool(const SetPartition&)>& keep,
                                               std::size_t bound = 10);

std::vector<Label> set_union(const std::vector<Label>& a, const std::vector<Label>& b);
std::vector<Label> set_minus(const std::vector<Label>& a, const std::vector<Label>& b);
std::vector<Label> set_intersect(const std::vector<Label>& a, const std::vector<Label>& b);
bool is_subset(const std::vector<Label>& a, const std::vector<Label>& b);
/// All subsets of s in binary-counter order, each sorted.
std::vector<std::vector<Label>> subsets(const std::vector<Label>& s);
std::vector<std::vector<Label>> subsets_of_size(const std::vector<Label>& s, std::size_t k);

/// Double-rainbow ambient N' = {n--, n-, n+, n++} ∪ N with
/// n-- < N_< < n- < N_= < n+ < N_> < n++ (up to collapses).
struct DoubleGeometry {
  std::vector<Label> lt, eq, gt;
  Label nmm = 0, nm = 0, np = 0, npp = 0;
  GroundSet N;
  GroundSet ambient;

  /// Canonical labels 1.. for sizes (a, b, c). Empty N_< merges n-- with n-;
  /// empty N_> merges n+ with n++; merge_inner (needs b = 0) identifies n- and n+.
  static DoubleGeometry make(int a, int b, int c, bool merge_inner = false);
  void validate() const;
  bool inner_merged() const { return nm == np; }
  std::vector<Label> anchors() const;
  std::vector<Label> le() const;  // N_< ∪ N_=
  std::vector<Label> ge() const;  // N_= ∪ N_>
  /// The multiset n--⌣_m n++ ∪ n-⌣_ell n+ over the ambient set.
  ArcMultiset mu(int m, int ell) const;
  std::string describe() const;
};

/// Nested intervals N = N_1 ⊇ ... ⊇ N_k with anchor pairs n_j^± around N_j.
struct OnionGeometry {
  std::vector<std::vector<Label>> left, right;  // layers 1..k-1: N_j − N_{j+1} split around N_{j+1}
  std::vector<Label> core;                       // N_k
  std::vector<Label> nm, np;                     // anchors per layer, size k
  std::vector<GroundSet> layers;                 // N_1, ..., N_k
  GroundSet N;
  GroundSet ambient;

  static OnionGeometry make(const std::vector<int>& left_sizes, const std::vector<int>& right_sizes, int core_size);
  std::size_t depth() const { return nm.size(); }
  void validate() const;
  ArcMultiset mu(const std::vector<int>& m) const;
  /// Layer j as a double geometry: N_< = left[j], N_= = N_{j+1}, N_> = right[j].
  DoubleGeometry peel_layer(std::size_t j) const;
};

}  // namespace rainbow

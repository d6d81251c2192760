#include "doctest.h"

#include <random>
#include <set>

#include "rainbow/setpart.hpp"
#include "support.hpp"

using namespace rainbow;

namespace {
const GroundSet N6 = GroundSet::first(6);
std::vector<Arc> A(std::initializer_list<Arc> xs) { return xs; }
}  // namespace

TEST_CASE("parsing") {
  const SetPartition lam = parse_partition("1-5 2-4 4-6", N6);
  CHECK(lam.arcs() == A({{1, 5}, {2, 4}, {4, 6}}));
  CHECK(parse_partition("", GroundSet::first(3)).empty());
  try {
    parse_partition("1-4 2-4", N6);
    FAIL("repeated right endpoint accepted");
  } catch (const PartitionError& e) {
    CHECK(e.kind == PartitionError::Kind::DistinctEndpointViolation);
  }
  try {
    parse_partition("1-7", N6);
    FAIL("endpoint outside ground accepted");
  } catch (const PartitionError& e) {
    CHECK(e.kind == PartitionError::Kind::GroundViolation);
  }
  CHECK_THROWS_AS(parse_partition("3-1", N6), PartitionError);
  CHECK_THROWS_AS(parse_partition("1-x", N6), PartitionError);
}

TEST_CASE("ground sets") {
  CHECK(parse_ground("n=6") == N6);
  CHECK(parse_ground("6") == N6);
  CHECK(parse_ground("N=2,3,5,7").labels() == std::vector<Label>{2, 3, 5, 7});
  CHECK_THROWS(parse_ground("N=3,2"));
  const GroundSet g({2, 3, 5, 7});
  CHECK(g.w0(2) == 7);
  CHECK(g.w0(5) == 3);
}

TEST_CASE("multisets keep multiplicity") {
  ArcMultiset m(GroundSet::first(3), {});
  m.add({1, 3}, 3);
  CHECK(m.size() == 3);
  CHECK(nst_points(m.arcs(), {2}) == 3);
}

TEST_CASE("blocks") {
  auto b = blocks(parse_partition("1-5 2-4 4-6", N6));
  std::set<std::vector<Label>> got(b.begin(), b.end());
  CHECK(got == std::set<std::vector<Label>>{{1, 5}, {2, 4, 6}, {3}});
  CHECK(blocks(SetPartition(GroundSet::first(3), {})).size() == 3);
  CHECK(blocks(parse_partition("1-2", GroundSet::first(2))) == std::vector<std::vector<Label>>{{1, 2}});
}

TEST_CASE("dagger") {
  const SetPartition lam = parse_partition("1-5 2-4 4-6", N6);
  CHECK(dagger(lam) == parse_partition("2-6 3-5 1-3", N6));
  CHECK(dagger(dagger(lam)) == lam);
  CHECK(dagger(SetPartition(N6, {})).empty());
}

TEST_CASE("uncross") {
  CHECK(uncross(parse_partition("1-4 2-5 4-6", N6)) == parse_partition("2-4 4-5 1-6", N6));
  CHECK(uncross(parse_partition("1-3 2-4", GroundSet::first(4))) == parse_partition("2-3 1-4", GroundSet::first(4)));
  const SetPartition nc = parse_partition("1-6 2-3 3-5", N6);
  CHECK(uncross(nc) == nc);
}

TEST_CASE("uncross image is exactly the noncrossing partitions") {
  for (int n = 0; n <= 7; ++n) {
    std::set<SetPartition> image, noncrossing;
    for (const SetPartition& lam : enumerate_partitions(GroundSet::first(n))) {
      image.insert(uncross(lam));
      if (crs(lam.arcs()) == 0) noncrossing.insert(lam);
    }
    CHECK(image == noncrossing);
  }
}

TEST_CASE("statistics") {
  const SetPartition lam = parse_partition("1-5 2-4 4-6", N6);
  CHECK(nst(lam.arcs(), lam.arcs()) == 1);
  CHECK(crs(lam.arcs()) == 1);
  CHECK(nst_points(A({{1, 6}}), {2, 3, 4, 5}) == 4);
  CHECK(lefts(lam.arcs()) == std::vector<Label>{1, 2, 4});
  CHECK(rights(lam.arcs()) == std::vector<Label>{4, 5, 6});
  CHECK(wt_up({3, 4}, {1, 3}) == 3);
  CHECK(wt_down({1, 3}, {3, 4}) == 3);
}

TEST_CASE("nst/wt conversion needs A to avoid left endpoints") {
  // With a ∈ L(λ) the arc starting at a is counted on the right but not as a nesting.
  const SetPartition lam = parse_partition("1-2", GroundSet::first(2));
  CHECK(nst_points(lam.arcs(), {1}) == 0);
  CHECK(wt_up(rights(lam.arcs()), {1}) - wt_up(lefts(lam.arcs()), {1}) == 1);
}

TEST_CASE("region selection") {
  const GroundSet g = GroundSet::first(5);
  const SetPartition gam = parse_partition("1-5 3-4", g);
  CHECK(region_select(gam.arcs(), {1, 2}, {4, 5}) == A({{1, 5}}));
  CHECK(arcs_within(gam.arcs(), {3}).empty());
}

TEST_CASE("enumeration counts are Bell numbers") {
  const auto bell = testing::bell_numbers(9);
  for (int n = 0; n <= 9; ++n) CHECK(enumerate_partitions(GroundSet::first(n)).size() == bell[static_cast<std::size_t>(n)]);
  CHECK(enumerate_partitions(GroundSet::first(1)).front().empty());
  CHECK_THROWS_AS(enumerate_partitions(GroundSet::first(11)), PartitionError);
  const auto small = enumerate_partitions(GroundSet::first(5), [](const SetPartition& l) { return l.size() <= 1; });
  CHECK(small.size() == 11);
}

TEST_CASE("enumeration order is deterministic and duplicate free") {
  const auto a = enumerate_partitions(GroundSet::first(6));
  const auto b = enumerate_partitions(GroundSet::first(6));
  CHECK(a == b);
  CHECK(std::set<SetPartition>(a.begin(), a.end()).size() == a.size());
}

TEST_CASE("random arc sets: invalid inputs are always rejected") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<Arc> arcs;
    const int k = static_cast<int>(rng() % 4);
    for (int s = 0; s < k; ++s) {
      Label i = 1 + static_cast<Label>(rng() % n), j = 1 + static_cast<Label>(rng() % n);
      if (i == j) continue;
      arcs.push_back({std::min(i, j), std::max(i, j)});
    }
    if (is_set_partition(arcs)) {
      CHECK_NOTHROW(SetPartition(GroundSet::first(n), arcs));
    } else {
      CHECK_THROWS_AS(SetPartition(GroundSet::first(n), arcs), PartitionError);
    }
  }
}

TEST_CASE("subset helpers") {
  CHECK(subsets({1, 2, 3}).size() == 8);
  CHECK(subsets_of_size({1, 2, 3, 4}, 2).size() == 6);
  CHECK(set_minus({1, 2, 3}, {2}) == std::vector<Label>{1, 3});
  CHECK(set_union({1, 3}, {2, 3}) == std::vector<Label>{1, 2, 3});
  CHECK(is_subset({1, 3}, {1, 2, 3}));
}

TEST_CASE("double geometries") {
  const DoubleGeometry g = DoubleGeometry::make(1, 1, 1);
  CHECK(g.N.size() == 3);
  CHECK(g.anchors().size() == 4);
  CHECK(DoubleGeometry::make(0, 1, 1).anchors().size() == 3);
  const DoubleGeometry merged = DoubleGeometry::make(1, 0, 1, true);
  CHECK(merged.inner_merged());
  CHECK_THROWS_AS(merged.mu(1, 1), PartitionError);
  CHECK_THROWS_AS(DoubleGeometry::make(1, 1, 1, true), PartitionError);
  // region_select example with N_<={1,2}, N_=={3}, N_>={4,5}.
  const SetPartition gam = parse_partition("1-5 3-4", GroundSet::first(5));
  CHECK(region_select(gam.arcs(), {1, 2}, {4, 5}) == A({{1, 5}}));
}

TEST_CASE("onion geometries") {
  const OnionGeometry o = OnionGeometry::make({1, 1}, {1, 0}, 2);
  CHECK(o.depth() == 3);
  CHECK(o.layers[0].size() == 5);
  CHECK(o.np[1] == o.np[2]);
  CHECK(o.nm[1] != o.nm[2]);
  CHECK(o.layers[2].size() == 2);
  const DoubleGeometry l0 = o.peel_layer(0);
  CHECK(l0.eq == o.layers[1].labels());
  CHECK_THROWS_AS(o.peel_layer(2), PartitionError);
}

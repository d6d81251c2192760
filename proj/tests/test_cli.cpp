#include "doctest.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "rainbow/nestposet.hpp"
#include "rainbow/restrict.hpp"

using namespace rainbow;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "rainbow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("decompose prints one row per term") {
  const Result r = call({"decompose", "rainbow", "--n", "3", "--m", "2", "--target", "superchars"});
  REQUIRE(r.code == cli::kOk);
  CHECK(lines(r.out) == 6);
  CHECK(r.out.find("1-3") != std::string::npos);
}

TEST_CASE("json export re-parses to the engine coefficients") {
  const std::vector<std::pair<std::vector<std::string>, Decomposition>> cases{
      {{"rainbow", "--n", "4", "--m", "2"}, rainbow::rainbow(GroundSet::first(4), 2, RainbowTarget::Superchars)},
      {{"rainbow", "--labels", "2,3,5", "--m", "1", "--target", "core"},
       rainbow::rainbow(GroundSet({2, 3, 5}), 1, RainbowTarget::Core)},
      {{"double-rainbow", "--split", "1,1,1", "--m", "2", "--ell", "1"},
       double_rainbow(DoubleGeometry::make(1, 1, 1), 2, 1, DoubleTarget::Superchars)},
      {{"double-rainbow", "--split", "1,0,2", "--anchors", "merged", "--m", "1", "--target", "peel"},
       double_rainbow(DoubleGeometry::make(1, 0, 2, true), 1, 0, DoubleTarget::Peel)},
      {{"peel", "--split", "2,1,1", "--b", "1", "--f", "2"}, peel(DoubleGeometry::make(2, 1, 1), 1, 2)},
      {{"onion", "--layers", "1:1", "--n", "1", "--m", "1,2"},
       onion(OnionGeometry::make({1}, {1}, 1), {1, 2})},
      {{"psi", "--n", "4", "--K", "2,4"}, psiK(GroundSet::first(4), {2, 4})},
      {{"psi", "--n", "4", "--K", "2,4", "--J", "3"}, psi_hook(GroundSet::first(4), {2, 4}, {3})},
      {{"core", "--n", "4", "--k", "2"}, core(GroundSet::first(4), 2)},
      {{"ut-algebra", "--n", "4"}, ut_superchars(GroundSet::first(4))},
      {{"ut-algebra", "--n", "3", "--target", "flipped"}, ut_flipped(GroundSet::first(3))},
  };
  for (const auto& [args, want] : cases) {
    std::vector<std::string> a{"export"};
    a.insert(a.end(), args.begin(), args.end());
    const Result r = call(a);
    REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["basis"] == want.basis);
    REQUIRE(j["terms"].size() == want.terms.size());
    std::size_t t = 0;
    for (const auto& [label, c] : want.terms) {
      const auto& row = j["terms"][t++];
      CHECK(row["label"] == label_to_string(label));
      CHECK(QPoly::parse(row["coeff"].get<std::string>()).eval(2) == c.eval(2));
    }
  }
}

TEST_CASE("evaluation at q and csv output") {
  const Result r = call({"export", "core", "--n", "3", "--k", "1", "--q", "3", "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  std::ostringstream want;
  want << "label,coeff\n";
  for (const auto& [label, c] : core(GroundSet::first(3), 1).terms) want << label_to_string(label) << ',' << c.eval(3) << '\n';
  CHECK(r.out == want.str());
}

TEST_CASE("output is byte stable") {
  const std::vector<std::string> a{"decompose", "double-rainbow", "--split", "2,1,1", "--m", "2", "--ell", "1", "--format",
                                   "json"};
  CHECK(call(a).out == call(a).out);
}

TEST_CASE("qbinom") {
  const Result r = call({"qbinom", "chain:4", "--k", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == poset_binom(Poset::chain(4), 2).to_string() + "\n");
  const Result b = call({"qbinom", "blocks:1-7 2-4 4-5", "--n", "7", "--k", "1", "--q", "2"});
  CHECK(b.out == poset_binom(block_poset(parse_partition("1-7 2-4 4-5", GroundSet::first(7))), 1).eval(2).get_str() + "\n");
  const Result c = call({"qbinom", "covers:3:0<1,1<2", "--k", "1"});
  CHECK(c.out == "q^2 + q + 1\n");
}

TEST_CASE("arc diagrams") {
  const Result r = call({"show", "1-5 2-4 4-6", "--n", "6"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out ==
        "1   2   3   4   5   6\n"
        "|   +-------+   |   |\n"
        "|           +---|---+\n"
        "+---------------+\n");
  const Result e = call({"show", "{}", "--n", "3"});
  CHECK(e.out == "1   2   3\n");
}

TEST_CASE("exit codes") {
  const Result none = call({});
  CHECK(none.code == cli::kUsage);
  CHECK(lines(none.err) == 1);
  CHECK(call({"decompose", "rainbow"}).code == cli::kUsage);
  CHECK(call({"decompose", "nonsense", "--n", "2"}).code == cli::kUsage);
  CHECK(call({"decompose", "peel", "--split", "1,1,1", "--b", "2", "--f", "2"}).code == cli::kUsage);
  CHECK(call({"decompose", "double-rainbow", "--split", "1,1"}).code == cli::kUsage);
  CHECK(call({"show", "1-3 1-2", "--n", "3"}).code == cli::kUsage);
  CHECK(call({"export", "core", "--n", "2", "--format", "text"}).code == cli::kUsage);
  CHECK(call({"verify", "orbits", "--budget", "10"}).code == cli::kBudget);
  CHECK(call({"--help"}).code == cli::kOk);
}

TEST_CASE("verify suites pass") {
  for (const std::string s : {"identities", "orbits", "traces", "solver"}) {
    const Result r = call({"verify", s, "--max", "4"});
    CHECK_MESSAGE(r.code == cli::kOk, r.err);
    CHECK(r.out.find("pass") != std::string::npos);
  }
}

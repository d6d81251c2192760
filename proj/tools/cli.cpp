#include "cli.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rainbow/nestposet.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/restrict.hpp"
#include "render.hpp"
#include "verify.hpp"

namespace rainbow::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_longs(const std::string& text, char sep = ',') {
  std::vector<long> v;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, sep)) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    long x = 0;
    try {
      x = std::stol(tok, &pos);
    } catch (const std::logic_error&) {
      pos = 0;
    }
    if (pos != tok.size()) throw UsageError("bad integer '" + tok + "' in '" + text + "'");
    v.push_back(x);
  }
  return v;
}

std::vector<Label> parse_labels(const std::string& text) {
  std::vector<Label> v;
  for (long x : parse_longs(text)) v.push_back(static_cast<Label>(x));
  std::sort(v.begin(), v.end());
  return v;
}

/// Flags shared by decompose and export. Each maps onto one engine argument.
struct Query {
  std::string kind;
  std::optional<int> n;
  std::string labels;
  long m = 1, ell = 0, k = 0, b = 0, f = 0;
  std::string ms, split = "1,1,1", anchors = "distinct", target, K, J, layers;
  std::optional<long> q;
  std::string format = "text";

  GroundSet ground() const {
    if (!labels.empty()) return GroundSet(parse_labels(labels));
    if (!n) throw UsageError(kind + " needs --n or --labels");
    if (*n < 0) throw UsageError("--n must be nonnegative");
    return GroundSet::first(*n);
  }
  DoubleGeometry geometry() const {
    const auto s = parse_longs(split);
    if (s.size() != 3) throw UsageError("--split takes three sizes a,b,c");
    if (anchors != "distinct" && anchors != "merged") throw UsageError("--anchors is distinct or merged");
    return DoubleGeometry::make(static_cast<int>(s[0]), static_cast<int>(s[1]), static_cast<int>(s[2]),
                                anchors == "merged");
  }
};

void add_query_flags(CLI::App* c, Query& qy) {
  c->add_option("kind", qy.kind, "rainbow | double-rainbow | onion | psi | core | peel | ut-algebra")
      ->required()
      ->check(CLI::IsMember({"rainbow", "double-rainbow", "onion", "psi", "core", "peel", "ut-algebra"}));
  c->add_option("--n", qy.n, "|N| for N = {1..n}; core size for onion");
  c->add_option("--labels", qy.labels, "explicit ground set, e.g. 2,3,5");
  c->add_option("--m", qy.ms, "outer multiplicity; onion takes one per layer, e.g. 1,2,1");
  c->add_option("--ell", qy.ell, "inner multiplicity (double-rainbow)");
  c->add_option("--split", qy.split, "sizes of N_<, N_=, N_> as a,b,c");
  c->add_option("--anchors", qy.anchors, "distinct | merged (identify n- with n+; needs b = 0)");
  c->add_option("--target", qy.target, "rainbow: core|superchars; double-rainbow: peel|superchars; ut-algebra: flipped|superchars");
  c->add_option("--K", qy.K, "column set for psi, e.g. 1,3");
  c->add_option("--J", qy.J, "right endpoints: psi restricted to one hook");
  c->add_option("--k", qy.k, "core module index");
  c->add_option("--b", qy.b, "peel rank parameter");
  c->add_option("--f", qy.f, "peel size parameter");
  c->add_option("--layers", qy.layers, "onion side sizes per outer layer, e.g. 1:1,1:0");
  c->add_option("--q", qy.q, "evaluate coefficients at this q");
}

Decomposition build(Query& qy) {
  if (!qy.ms.empty() && qy.kind != "onion") {
    const auto v = parse_longs(qy.ms);
    if (v.size() != 1) throw UsageError("--m takes one value for " + qy.kind);
    qy.m = v[0];
  }
  if (qy.m < 0 || qy.ell < 0) throw UsageError("multiplicities must be nonnegative");
  const std::string& t = qy.target;
  if (qy.kind == "rainbow") {
    if (!t.empty() && t != "core" && t != "superchars") throw UsageError("rainbow --target is core or superchars");
    return rainbow::rainbow(qy.ground(), qy.m, t == "core" ? RainbowTarget::Core : RainbowTarget::Superchars);
  }
  if (qy.kind == "double-rainbow") {
    if (!t.empty() && t != "peel" && t != "superchars") throw UsageError("double-rainbow --target is peel or superchars");
    return double_rainbow(qy.geometry(), qy.m, qy.ell, t == "peel" ? DoubleTarget::Peel : DoubleTarget::Superchars);
  }
  if (qy.kind == "peel") {
    const DoubleGeometry g = qy.geometry();
    if (!peel_in_range(g, qy.b, qy.f)) throw UsageError("peel needs 0 <= b <= min(a,c) and b <= f <= a+c");
    return peel(g, qy.b, qy.f);
  }
  if (qy.kind == "onion") {
    std::vector<int> left, right;
    std::istringstream in(qy.layers);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      const auto lr = parse_longs(tok, ':');
      if (lr.size() != 2) throw UsageError("--layers entries are left:right");
      left.push_back(static_cast<int>(lr[0]));
      right.push_back(static_cast<int>(lr[1]));
    }
    if (!qy.n) throw UsageError("onion needs --n for the innermost set");
    const OnionGeometry g = OnionGeometry::make(left, right, *qy.n);
    const auto m = parse_longs(qy.ms.empty() ? "1" : qy.ms);
    if (m.size() != g.depth()) throw UsageError("onion needs " + std::to_string(g.depth()) + " multiplicities in --m");
    return onion(g, m);
  }
  if (qy.kind == "psi") {
    const GroundSet N = qy.ground();
    return qy.J.empty() ? psiK(N, parse_labels(qy.K)) : psi_hook(N, parse_labels(qy.K), parse_labels(qy.J));
  }
  if (qy.kind == "core") {
    const GroundSet N = qy.ground();
    if (qy.k < 0 || qy.k > static_cast<long>(N.size())) throw UsageError("core needs 0 <= k <= |N|");
    return core(N, qy.k);
  }
  // ut-algebra
  if (!t.empty() && t != "flipped" && t != "superchars") throw UsageError("ut-algebra --target is flipped or superchars");
  return t == "flipped" ? ut_flipped(qy.ground()) : ut_superchars(qy.ground());
}

Poset parse_poset(const std::string& spec, std::optional<int> n) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon), rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "chain" || head == "antichain") {
    const auto v = parse_longs(rest);
    if (v.size() != 1 || v[0] < 0) throw UsageError(head + " needs a size, e.g. " + head + ":4");
    const auto sz = static_cast<std::size_t>(v[0]);
    return head == "chain" ? Poset::chain(sz) : Poset::antichain(sz);
  }
  if (head == "covers") {
    // covers:SIZE:a<b,c<d
    const auto c2 = rest.find(':');
    const auto sz = parse_longs(rest.substr(0, c2));
    if (sz.size() != 1 || sz[0] < 0) throw UsageError("covers needs a size, e.g. covers:3:0<1,1<2");
    std::vector<std::pair<std::size_t, std::size_t>> cov;
    if (c2 != std::string::npos) {
      std::istringstream in(rest.substr(c2 + 1));
      std::string tok;
      while (std::getline(in, tok, ',')) {
        const auto ab = parse_longs(tok, '<');
        if (ab.size() != 2 || ab[0] < 0 || ab[1] < 0 || ab[0] >= sz[0] || ab[1] >= sz[0])
          throw UsageError("bad cover '" + tok + "'");
        cov.emplace_back(static_cast<std::size_t>(ab[0]), static_cast<std::size_t>(ab[1]));
      }
    }
    return Poset::from_covers(static_cast<std::size_t>(sz[0]), cov);
  }
  if (head == "blocks") {
    if (!n) throw UsageError("blocks:<partition> needs --n");
    return block_poset(parse_partition(rest, GroundSet::first(*n)));
  }
  throw UsageError("poset is chain:N, antichain:N, covers:N:a<b,... or blocks:<partition>");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supercharacter decompositions for UT_N(F_q) restrictions", "rainbow"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand every subcommand");

  std::string format = "text";
  std::optional<long> q;
  std::optional<int> n;

  auto* qb = app.add_subcommand("qbinom", "poset q-binomial [P; k]");
  std::string poset_spec;
  long k = 0;
  qb->add_option("poset", poset_spec, "chain:N | antichain:N | covers:N:a<b,... | blocks:<partition>")->required();
  qb->add_option("--k", k, "subset size")->required();
  qb->add_option("--n", n, "ground size for blocks:<partition>");
  qb->add_option("--q", q, "evaluate at this q");
  qb->add_option("--format", format, "text | json");

  Query dq;
  auto* dc = app.add_subcommand("decompose", "decompose a restricted character");
  add_query_flags(dc, dq);
  dc->add_option("--format", dq.format, "text | json | csv");

  Query eq;
  eq.format = "json";
  auto* ex = app.add_subcommand("export", "decomposition as JSON or CSV");
  add_query_flags(ex, eq);
  ex->add_option("--format", eq.format, "json | csv");

  VerifyOptions vo;
  std::string suite;
  std::string qs;
  auto* vf = app.add_subcommand("verify", "compare engines against independent oracles");
  vf->add_option("suite", suite, "identities | orbits | traces | solver | all")
      ->required()
      ->check(CLI::IsMember({"identities", "orbits", "traces", "solver", "all"}));
  vf->add_option("--max,--n", vo.max_n, "largest |N|");
  vf->add_option("--m", vo.max_m, "largest rainbow multiplicity");
  vf->add_option("--q", qs, "comma-separated q values (oracle suites use the primes among them)");
  vf->add_option("--budget", vo.budget, "oracle state budget");

  std::string partition;
  bool above = false;
  auto* sh = app.add_subcommand("show", "ASCII arc diagram");
  sh->add_option("partition", partition, "arcs such as \"1-5 2-4 4-6\"")->required();
  sh->add_option("--n", n, "ground size (default: largest label)");
  sh->add_option("--labels", dq.labels, "explicit ground set");
  sh->add_flag("--above", above, "draw arcs above the nodes (superclass convention)");

  std::vector<const char*> args(argv, argv + argc);
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (qb->parsed()) {
      if (format != "text" && format != "json") throw UsageError("qbinom --format is text or json");
      print_poly(poset_binom(parse_poset(poset_spec, n), k), parse_format(format), q, out);
      return kOk;
    }
    if (dc->parsed() || ex->parsed()) {
      Query& qy = dc->parsed() ? dq : eq;
      const Format fmt = parse_format(qy.format);
      if (ex->parsed() && fmt == Format::Text) throw UsageError("export writes json or csv");
      print_decomposition(qy.kind, build(qy), fmt, qy.q, out);
      return kOk;
    }
    if (vf->parsed()) {
      if (!qs.empty()) vo.qs = parse_longs(qs);
      if (vo.max_n < 0 || vo.max_m < 0) throw UsageError("--max and --m must be nonnegative");
      std::vector<std::string> todo = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      std::string first;
      out << "suite        checked  status\n";
      for (const std::string& s : todo) {
        const SuiteResult r = run_suite(s, vo);
        std::string pad(std::max<std::size_t>(1, 13 - s.size()), ' ');
        std::string cnt = std::to_string(r.checked);
        out << s << pad << std::string(std::max<std::size_t>(1, 7 - cnt.size()), ' ') << cnt << "  "
            << (r.ok ? "pass" : "FAIL") << '\n';
        if (!r.ok && ok) first = s + ": " + r.counterexample;
        ok = ok && r.ok;
      }
      if (!ok) {
        err << "first counterexample: " << first << '\n';
        return kVerifyFailed;
      }
      return kOk;
    }
    // show
    GroundSet ground;
    const SetPartition probe = parse_partition(partition, GroundSet::first(1000));
    if (!dq.labels.empty()) {
      ground = GroundSet(parse_labels(dq.labels));
    } else {
      int top = n.value_or(0);
      for (const Arc& a : probe.arcs()) top = std::max(top, static_cast<int>(a.j));
      ground = GroundSet::first(top);
    }
    const SetPartition lam = parse_partition(partition, ground);
    out << arc_diagram(lam.arcs(), ground, above);
    return kOk;
  } catch (const oracle::OracleError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind == oracle::OracleError::Kind::BudgetExceeded ? kBudget : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace rainbow::cli

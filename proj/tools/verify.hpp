#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rainbow::cli {

struct VerifyOptions {
  int max_n = 8;           // cap on |N|; oracle suites also apply their own grid caps
  int max_m = 2;           // rainbow multiplicities 0..max_m
  std::vector<long> qs{2, 3};
  std::uint64_t budget = 10'000'000;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  bool ok = true;
  /// First failure: the labels, μ, q and both values.
  std::string counterexample;
};

/// Suites: identities, orbits, traces, solver. Throws oracle::OracleError on budget overrun.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);
const std::vector<std::string>& suite_names();

}  // namespace rainbow::cli

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilab/core/truth_table.hpp"

namespace ilab::verify {

struct Options {
  int n_max = 6;
  std::uint64_t seed = 1;
  int samples = 20;
  /// Extra functions checked on top of the random corpus.
  std::vector<TruthTable> extra;
  /// Feed the reference side of every comparison a table with one flipped bit.
  bool inject_fault = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  /// First failing case, human readable.
  std::string counterexample;

  bool passed() const { return failures == 0; }
};

/// suite in {"fourier", "measures", "bounds", "qsim", "all"}; throws InputError otherwise.
std::vector<CheckResult> run(const std::string& suite, const Options& options);

}  // namespace ilab::verify

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "ilab/core/rational.hpp"
#include "ilab/core/truth_table.hpp"

namespace ilab {

/// Inf_i(f) = Pr_x[f(x) != f(x ^ e_i)], exact.
Rational influence(const TruthTable& t, int i);
std::vector<Rational> influences(const TruthTable& t);
/// rho_f = mean of the influences.
Rational avg_influence(const TruthTable& t);
/// Mean over x of S(x), from a direct per-input scan.
Rational avg_sensitivity(const TruthTable& t);

/// S(x) = |{i : f(x) != f(x ^ e_i)}|. Throws InputError for x >= 2^n.
int sensitivity_at(const TruthTable& t, std::uint32_t x);

struct SensitivityResult {
  int value = 0;
  std::uint32_t witness = 0;  // smallest x attaining the maximum
};
SensitivityResult max_sensitivity(const TruthTable& t);

// --- block sensitivity ------------------------------------------------------------------------

inline constexpr int kMaxExactBsVars = 16;

struct BsOptions {
  /// Wall-clock limit. When exceeded the best packing found so far is returned with exact = false.
  std::optional<std::chrono::milliseconds> budget;
  /// Serial reference path (no OpenMP); used by tests and the benchmark.
  bool serial = false;
};

struct BlockSensitivityResult {
  int value = 0;
  /// false only when the budget ran out; value is then a lower bound.
  bool exact = true;
  std::uint32_t witness_input = 0;
  /// Pairwise disjoint sensitive blocks at witness_input, as variable masks.
  std::vector<std::uint32_t> witness_blocks;
};

/// Minimal sensitive blocks at x, sorted by size then mask.
std::vector<std::uint32_t> minimal_sensitive_blocks(const TruthTable& t, std::uint32_t x);

/// BS(x): maximum number of disjoint blocks B with f(x ^ B) != f(x). Requires n <= 16.
BlockSensitivityResult block_sensitivity_at(const TruthTable& t, std::uint32_t x, const BsOptions& options = {});

/// BS(f) = max_x BS(x). Requires n <= 16; larger inputs throw CapacityError.
BlockSensitivityResult block_sensitivity(const TruthTable& t, const BsOptions& options = {});

// --- aggregate --------------------------------------------------------------------------------

struct MeasureReport {
  int n = 0;
  std::vector<Rational> influences;
  Rational rho;
  Rational avg_sensitivity;
  SensitivityResult max_sensitivity;
  std::optional<BlockSensitivityResult> block_sensitivity;
};

struct MeasureOptions {
  bool compute_bs = true;
  BsOptions bs;
};

/// All measures. Block sensitivity is left empty when disabled or when n > 16.
MeasureReport measure(const TruthTable& t, const MeasureOptions& options = {});

}  // namespace ilab

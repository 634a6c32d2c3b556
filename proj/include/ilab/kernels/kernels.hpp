#pragma once

// Full-domain scans over 2^n inputs. Every kernel exists twice: a plain serial loop kept as the
// reference, and an OpenMP version used by the library. Tests require the two to agree exactly;
// bench/ compares their throughput.

#include <cstdint>
#include <span>
#include <vector>

#include "ilab/core/truth_table.hpp"

namespace ilab::kernels {

/// Caps the OpenMP worker count; 0 restores the runtime default.
void set_thread_limit(int threads);
/// Applies INFLUENCE_LAB_THREADS if set. Returns the effective limit (0 = auto).
int configure_threads_from_env();
int max_threads();

struct SensitivityScan {
  std::uint64_t total = 0;     // sum over x of S(x)
  int max = 0;                 // max over x of S(x)
  std::uint32_t argmax = 0;    // smallest x attaining max
};

namespace serial {

/// In-place unnormalized Walsh-Hadamard transform; data.size() must be a power of two.
void wht(std::span<std::int64_t> data);
/// counts[i] = |{x : f(x) != f(x ^ e_i)}|.
std::vector<std::uint64_t> influence_counts(const TruthTable& t);
SensitivityScan sensitivity_scan(const TruthTable& t);
/// |{(x, i_1..i_k) : f(x) != f(x ^ e_{i_1} ^ ... ^ e_{i_k})}| over all 2^n * n^k pairs.
std::uint64_t flip_count(const TruthTable& t, int k);

}  // namespace serial

namespace omp {

void wht(std::span<std::int64_t> data);
void wht(std::span<double> data);
void wht(std::span<long double> data);
std::vector<std::uint64_t> influence_counts(const TruthTable& t);
SensitivityScan sensitivity_scan(const TruthTable& t);
std::uint64_t flip_count(const TruthTable& t, int k);

}  // namespace omp

/// Signs (+1 for bit 0, -1 for bit 1) of every entry, as the starting vector of the transform.
std::vector<std::int64_t> sign_vector(const TruthTable& t);

}  // namespace ilab::kernels

#include <omp.h>

#include <bit>
#include <cstdlib>
#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab::kernels {

namespace {

// Below this many butterflies per stage the fork/join overhead dominates.
constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;

int default_threads = 0;

constexpr std::uint64_t kVarMaskNeg[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};

template <typename T>
void wht_impl(std::span<T> data) {
  const auto size = static_cast<std::int64_t>(data.size());
  if (!std::has_single_bit(data.size())) throw InputError("transform length must be a power of two");
  const std::int64_t pairs = size / 2;
  for (int stage = 0; (std::int64_t{1} << stage) < size; ++stage) {
    const std::int64_t h = std::int64_t{1} << stage;
#pragma omp parallel for schedule(static) if (pairs >= kParallelThreshold)
    for (std::int64_t p = 0; p < pairs; ++p) {
      const std::int64_t i = ((p >> stage) << (stage + 1)) | (p & (h - 1));
      const T a = data[i];
      const T b = data[i + h];
      data[i] = a + b;
      data[i + h] = a - b;
    }
  }
}

}  // namespace

void set_thread_limit(int threads) {
  if (threads < 0) throw InputError("thread limit must be >= 0");
  if (default_threads == 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads == 0 ? default_threads : threads);
}

int configure_threads_from_env() {
  const char* env = std::getenv("INFLUENCE_LAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 0) throw InputError("INFLUENCE_LAB_THREADS must be a nonnegative integer");
  set_thread_limit(static_cast<int>(value));
  return static_cast<int>(value);
}

int max_threads() { return omp_get_max_threads(); }

namespace omp {

void wht(std::span<std::int64_t> data) { wht_impl(data); }
void wht(std::span<double> data) { wht_impl(data); }
void wht(std::span<long double> data) { wht_impl(data); }

std::vector<std::uint64_t> influence_counts(const TruthTable& t) {
  const int n = t.n();
  const auto words = t.words();
  const auto nwords = static_cast<std::int64_t>(words.size());
  const std::uint64_t valid = valid_mask(n);
  std::vector<std::uint64_t> counts(n, 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t pairs = 0;
    if (i < 6) {
      const unsigned shift = 1u << i;
#pragma omp parallel for reduction(+ : pairs) schedule(static) if (nwords >= 256)
      for (std::int64_t j = 0; j < nwords; ++j) {
        const std::uint64_t w = words[j];
        pairs += std::popcount((w ^ (w >> shift)) & kVarMaskNeg[i] & valid);
      }
    } else {
      const std::int64_t stride = std::int64_t{1} << (i - 6);
#pragma omp parallel for reduction(+ : pairs) schedule(static) if (nwords >= 256)
      for (std::int64_t j = 0; j < nwords; ++j) {
        if ((j & stride) == 0) pairs += std::popcount(words[j] ^ words[j + stride]);
      }
    }
    counts[i] = 2 * pairs;
  }
  return counts;
}

SensitivityScan sensitivity_scan(const TruthTable& t) {
  const int n = t.n();
  const auto size = static_cast<std::int64_t>(t.size());
  std::uint64_t total = 0;
  int best = -1;
  std::uint32_t best_x = 0;
#pragma omp parallel
  {
    int local_best = -1;
    std::uint32_t local_x = 0;
#pragma omp for reduction(+ : total) schedule(static) nowait
    for (std::int64_t xi = 0; xi < size; ++xi) {
      const auto x = static_cast<std::uint32_t>(xi);
      const bool v = t[x];
      int s = 0;
      for (int i = 0; i < n; ++i) s += v != t[x ^ (std::uint32_t{1} << i)];
      total += s;
      if (s > local_best) {
        local_best = s;
        local_x = x;
      }
    }
#pragma omp critical(ilab_sensitivity_max)
    {
      if (local_best > best || (local_best == best && local_x < best_x)) {
        best = local_best;
        best_x = local_x;
      }
    }
  }
  return {total, best, best_x};
}

std::uint64_t flip_count(const TruthTable& t, int k) {
  if (k < 1) throw InputError("tuple length must be positive");
  const int n = t.n();
  std::int64_t tuples = 1;
  for (int j = 0; j < k; ++j) tuples *= n;
  std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t tuple = 0; tuple < tuples; ++tuple) {
    std::uint32_t flip = 0;
    std::int64_t rest = tuple;
    for (int j = 0; j < k; ++j) {
      flip ^= std::uint32_t{1} << (rest % n);
      rest /= n;
    }
    std::uint64_t local = 0;
    for (std::uint32_t x = 0; x < t.size(); ++x) local += t[x] != t[x ^ flip];
    count += local;
  }
  return count;
}

}  // namespace omp
}  // namespace ilab::kernels

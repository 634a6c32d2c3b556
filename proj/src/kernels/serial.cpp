#include <bit>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab::kernels {

std::vector<std::int64_t> sign_vector(const TruthTable& t) {
  std::vector<std::int64_t> v(t.size());
  for (std::uint32_t x = 0; x < t.size(); ++x) v[x] = t.sign(x);
  return v;
}

namespace serial {

void wht(std::span<std::int64_t> data) {
  const std::size_t size = data.size();
  if (!std::has_single_bit(size)) throw InputError("transform length must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * h) {
      for (std::size_t i = block; i < block + h; ++i) {
        const std::int64_t a = data[i];
        const std::int64_t b = data[i + h];
        data[i] = a + b;
        data[i + h] = a - b;
      }
    }
  }
}

std::vector<std::uint64_t> influence_counts(const TruthTable& t) {
  std::vector<std::uint64_t> counts(t.n(), 0);
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    for (int i = 0; i < t.n(); ++i) {
      if (t[x] != t[x ^ (std::uint32_t{1} << i)]) ++counts[i];
    }
  }
  return counts;
}

SensitivityScan sensitivity_scan(const TruthTable& t) {
  SensitivityScan scan;
  scan.max = -1;
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    int s = 0;
    for (int i = 0; i < t.n(); ++i) s += t[x] != t[x ^ (std::uint32_t{1} << i)];
    scan.total += s;
    if (s > scan.max) {
      scan.max = s;
      scan.argmax = x;
    }
  }
  return scan;
}

std::uint64_t flip_count(const TruthTable& t, int k) {
  if (k < 1) throw InputError("tuple length must be positive");
  const int n = t.n();
  std::vector<int> digits(k, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint32_t flip = 0;
    for (int d : digits) flip ^= std::uint32_t{1} << d;
    for (std::uint32_t x = 0; x < t.size(); ++x) count += t[x] != t[x ^ flip];
    int pos = 0;
    while (pos < k && ++digits[pos] == n) digits[pos++] = 0;
    if (pos == k) break;
  }
  return count;
}

}  // namespace serial
}  // namespace ilab::kernels

#include "ilab/core/truth_table.hpp"

#include <bit>
#include <random>
#include <string>

#include "ilab/core/errors.hpp"

namespace ilab {

namespace {

void check_vars(int n) {
  if (n < 1 || n > kMaxVars) {
    throw CapacityError("variable count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxVars) + "]");
  }
}

std::size_t word_count(int n) { return n >= 6 ? (std::size_t{1} << (n - 6)) : 1; }

}  // namespace

std::uint64_t valid_mask(int n) noexcept {
  return n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1);
}

TruthTable::TruthTable(int n) : n_(n) {
  check_vars(n);
  words_.assign(word_count(n), 0);
}

TruthTable::TruthTable(int n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {}

TruthTable TruthTable::from_bits(int n, std::span<const std::uint8_t> bits) {
  check_vars(n);
  if (bits.size() != (std::size_t{1} << n)) {
    throw InputError("expected " + std::to_string(std::size_t{1} << n) + " table entries, got " +
                     std::to_string(bits.size()));
  }
  std::vector<std::uint64_t> words(word_count(n), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InputError("table entry at index " + std::to_string(i) + " is not 0/1");
    words[i >> 6] |= static_cast<std::uint64_t>(bits[i]) << (i & 63);
  }
  return TruthTable(n, std::move(words));
}

TruthTable TruthTable::from_function(int n, const std::function<bool(std::uint32_t)>& f) {
  check_vars(n);
  std::vector<std::uint64_t> words(word_count(n), 0);
  const std::uint32_t size = std::uint32_t{1} << n;
  for (std::uint32_t x = 0; x < size; ++x) {
    if (f(x)) words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return TruthTable(n, std::move(words));
}

TruthTable TruthTable::from_words(int n, std::vector<std::uint64_t> words) {
  check_vars(n);
  if (words.size() != word_count(n)) throw InputError("packed word count does not match n");
  if (words.back() & ~valid_mask(n)) throw InputError("unused high bits of packed table are set");
  return TruthTable(n, std::move(words));
}

bool TruthTable::at(std::uint32_t index) const {
  if (index >= size()) {
    throw InputError("input index " + std::to_string(index) + " out of range for n = " + std::to_string(n_));
  }
  return (*this)[index];
}

bool TruthTable::eval(std::span<const std::uint8_t> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) {
    throw InputError("assignment has " + std::to_string(x.size()) + " bits, table has n = " + std::to_string(n_));
  }
  std::uint32_t index = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] > 1) throw InputError("assignment bit " + std::to_string(i) + " is not 0/1");
    index |= static_cast<std::uint32_t>(x[i]) << i;
  }
  return (*this)[index];
}

std::uint64_t TruthTable::count_ones() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

TruthTable TruthTable::complement() const {
  std::vector<std::uint64_t> words = words_;
  for (auto& w : words) w = ~w;
  words.back() &= valid_mask(n_);
  return TruthTable(n_, std::move(words));
}

TruthTable compose(const TruthTable& outer, const TruthTable& inner) {
  const int m = outer.n();
  const int k = inner.n();
  if (m * k > kMaxVars) {
    throw CapacityError("composition needs " + std::to_string(m * k) + " variables (limit " +
                        std::to_string(kMaxVars) + ")");
  }
  const std::uint32_t block_mask = (std::uint32_t{1} << k) - 1;
  return TruthTable::from_function(m * k, [&](std::uint32_t x) {
    std::uint32_t outer_index = 0;
    for (int j = 0; j < m; ++j) {
      if (inner[(x >> (j * k)) & block_mask]) outer_index |= std::uint32_t{1} << j;
    }
    return outer[outer_index];
  });
}

TruthTable iterate(const TruthTable& f, int k) {
  if (k < 1) throw InputError("iteration count must be positive");
  long long vars = f.n();
  for (int i = 1; i < k; ++i) {
    vars *= f.n();
    if (vars > kMaxVars) break;
  }
  if (vars > kMaxVars) {
    throw CapacityError("iterate(f, " + std::to_string(k) + ") exceeds " + std::to_string(kMaxVars) + " variables");
  }
  TruthTable result = f;
  for (int i = 1; i < k; ++i) result = compose(f, result);
  return result;
}

TruthTable iterated_base_function() {
  return TruthTable::from_function(4, [](std::uint32_t x) {
    const int x0 = x & 1, x1 = (x >> 1) & 1, x2 = (x >> 2) & 1, x3 = (x >> 3) & 1;
    return x0 * (x1 - x2) * (x1 - x2) + (1 - x0) * (x2 - x3) * (x2 - x3) != 0;
  });
}

TruthTable builtin(std::string_view name, int n) {
  if (name == "parity") {
    return TruthTable::from_function(n, [](std::uint32_t x) { return std::popcount(x) & 1; });
  }
  if (name == "and") {
    const std::uint32_t all = (n >= 1 && n <= kMaxVars) ? (std::uint32_t{1} << n) - 1 : 0;
    return TruthTable::from_function(n, [all](std::uint32_t x) { return x == all; });
  }
  if (name == "or") {
    return TruthTable::from_function(n, [](std::uint32_t x) { return x != 0; });
  }
  if (name == "majority" || name == "maj") {
    if (n % 2 == 0) throw InputError("majority needs an odd variable count, got " + std::to_string(n));
    return TruthTable::from_function(n, [n](std::uint32_t x) { return 2 * std::popcount(x) > n; });
  }
  if (name == "paper_f") {
    if (n != 4) throw InputError("paper_f is defined on exactly 4 variables");
    return iterated_base_function();
  }
  if (name == "const0") return TruthTable(n);
  if (name == "const1") return TruthTable(n).complement();
  throw InputError("unknown builtin function '" + std::string(name) + "'");
}

TruthTable random_table(int n, std::uint64_t seed) {
  check_vars(n);
  std::mt19937_64 engine(seed);
  std::vector<std::uint64_t> words(word_count(n));
  for (auto& w : words) w = engine();
  words.back() &= valid_mask(n);
  return TruthTable::from_words(n, std::move(words));
}

}  // namespace ilab

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ilab {

inline constexpr int kMaxVars = 20;

/// Complete value table of f : {0,1}^n -> {0,1}, bit-packed LSB-first.
///
/// Input x is addressed by index(x) = sum_i x_i 2^i. The sign view maps bit 0 to +1 and
/// bit 1 to -1. Tables are immutable once built.
class TruthTable {
 public:
  /// All-zero table on n variables.
  explicit TruthTable(int n);

  /// Table from one byte (0 or 1) per input index; size must be 2^n.
  static TruthTable from_bits(int n, std::span<const std::uint8_t> bits);
  static TruthTable from_function(int n, const std::function<bool(std::uint32_t)>& f);
  /// Wrap packed words. Unused high bits of the last word must be zero.
  static TruthTable from_words(int n, std::vector<std::uint64_t> words);

  int n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << n_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Value at a packed input index. Throws InputError when index >= 2^n.
  bool at(std::uint32_t index) const;
  /// Unchecked access for hot loops.
  bool operator[](std::uint32_t index) const noexcept {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  int sign(std::uint32_t index) const noexcept { return (*this)[index] ? -1 : 1; }

  /// Value at an explicit assignment (x[0] is x_0). Throws InputError on wrong length
  /// or non-binary entries.
  bool eval(std::span<const std::uint8_t> x) const;
  int sign_eval(std::span<const std::uint8_t> x) const { return eval(x) ? -1 : 1; }

  std::uint64_t count_ones() const noexcept;
  TruthTable complement() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  TruthTable(int n, std::vector<std::uint64_t> words);

  int n_;
  std::vector<std::uint64_t> words_;
};

/// Mask of the valid bits inside a single word for tables with fewer than 64 entries.
std::uint64_t valid_mask(int n) noexcept;

/// result(x) = outer(inner(X_0), ..., inner(X_{m-1})), block X_j = variables [j*k, (j+1)*k).
TruthTable compose(const TruthTable& outer, const TruthTable& inner);

/// f_1 = f, f_k = compose(f, f_{k-1}). Requires n^k <= 20.
TruthTable iterate(const TruthTable& f, int k);

/// Built-in families: "parity", "and", "or", "majority" (alias "maj", odd n), "paper_f" (n = 4),
/// "const0", "const1".
TruthTable builtin(std::string_view name, int n);

/// The 4-variable base function f(x) = x0 (x1 - x2)^2 + (1 - x0)(x2 - x3)^2.
TruthTable iterated_base_function();

/// 2^n uniform bits from std::mt19937_64 seeded with `seed`; raw engine output only, so the
/// table is identical on every conforming platform.
TruthTable random_table(int n, std::uint64_t seed);

}  // namespace ilab

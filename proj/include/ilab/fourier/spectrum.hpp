#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ilab/core/rational.hpp"
#include "ilab/core/truth_table.hpp"

namespace ilab {

/// Fourier coefficients of a +-1 valued function, f^_s = E_x[f(x) (-1)^{s.x}].
///
/// Stored exactly as integer correlation sums c_s = sum_x f(x)(-1)^{s.x}, so that
/// f^_s = c_s / 2^n. Masks s are LSB-first like input indices.
class FourierSpectrum {
 public:
  FourierSpectrum(int n, std::vector<std::int64_t> sums);

  int n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << n_; }
  std::span<const std::int64_t> sums() const noexcept { return sums_; }
  std::int64_t sum(std::uint32_t s) const { return sums_.at(s); }
  std::int64_t denominator() const noexcept { return std::int64_t{1} << n_; }
  Rational coeff(std::uint32_t s) const { return Rational(sum(s), denominator()); }
  double coeff_value(std::uint32_t s) const;

  /// W[w] = sum_{|s| = w} c_s^2, exact. Sums to 4^n for a +-1 source.
  std::vector<std::int64_t> weight_distribution() const;
  /// sum_s f^_s^2 as an exact rational; 1 for every +-1 source.
  Rational parseval_sum() const;

  friend bool operator==(const FourierSpectrum&, const FourierSpectrum&) = default;

 private:
  int n_;
  std::vector<std::int64_t> sums_;
};

/// Exact transform via the integer butterfly, O(n 2^n) additions.
FourierSpectrum wht(const TruthTable& t);

/// Inverse transform. Throws ConsistencyError when the reconstruction is not +-1 valued.
TruthTable inverse_wht(const FourierSpectrum& spectrum);

/// max |s| over nonzero coefficients; 0 for the all-zero spectrum.
int spectral_degree(const FourierSpectrum& spectrum);

/// rho = sum_s f^_s^2 |s| / n, exact.
Rational rho_from_spectrum(const FourierSpectrum& spectrum);

/// sum_{s : bit i of s} f^_s^2, exact. Equals the influence of variable i.
Rational influence_from_spectrum(const FourierSpectrum& spectrum, int i);

}  // namespace ilab

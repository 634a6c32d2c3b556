#include "ilab/fourier/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab {

FourierSpectrum::FourierSpectrum(int n, std::vector<std::int64_t> sums) : n_(n), sums_(std::move(sums)) {
  if (n < 1 || n > kMaxVars) throw CapacityError("spectrum variable count out of range");
  if (sums_.size() != (std::size_t{1} << n)) throw InputError("spectrum must have 2^n entries");
}

double FourierSpectrum::coeff_value(std::uint32_t s) const {
  return std::ldexp(static_cast<double>(sum(s)), -n_);
}

std::vector<std::int64_t> FourierSpectrum::weight_distribution() const {
  std::vector<std::int64_t> w(n_ + 1, 0);
  for (std::uint32_t s = 0; s < size(); ++s) w[std::popcount(s)] += sums_[s] * sums_[s];
  return w;
}

Rational FourierSpectrum::parseval_sum() const {
  std::int64_t total = 0;
  for (auto c : sums_) total += c * c;
  return Rational(total, std::int64_t{1} << (2 * n_));
}

FourierSpectrum wht(const TruthTable& t) {
  auto sums = kernels::sign_vector(t);
  kernels::omp::wht(sums);
  return FourierSpectrum(t.n(), std::move(sums));
}

TruthTable inverse_wht(const FourierSpectrum& spectrum) {
  std::vector<std::int64_t> values(spectrum.sums().begin(), spectrum.sums().end());
  kernels::omp::wht(values);
  // values[x] = 2^n f(x) for a +-1 source.
  const std::int64_t scale = spectrum.denominator();
  std::vector<std::uint8_t> bits(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] == scale) {
      bits[x] = 0;
    } else if (values[x] == -scale) {
      bits[x] = 1;
    } else {
      throw ConsistencyError("inverse transform is not +-1 valued at input " + std::to_string(x));
    }
  }
  return TruthTable::from_bits(spectrum.n(), bits);
}

int spectral_degree(const FourierSpectrum& spectrum) {
  int degree = 0;
  const auto sums = spectrum.sums();
  for (std::uint32_t s = 0; s < sums.size(); ++s) {
    if (sums[s] != 0) degree = std::max(degree, std::popcount(s));
  }
  return degree;
}

Rational rho_from_spectrum(const FourierSpectrum& spectrum) {
  const auto w = spectrum.weight_distribution();
  std::int64_t num = 0;
  for (std::size_t k = 0; k < w.size(); ++k) num += w[k] * static_cast<std::int64_t>(k);
  // sum_s (c_s / 2^n)^2 |s| / n
  return Rational(num, std::int64_t{1} << (2 * spectrum.n())) / Rational(spectrum.n());
}

Rational influence_from_spectrum(const FourierSpectrum& spectrum, int i) {
  if (i < 0 || i >= spectrum.n()) throw InputError("variable index out of range");
  std::int64_t num = 0;
  const auto sums = spectrum.sums();
  for (std::uint32_t s = 0; s < sums.size(); ++s) {
    if ((s >> i) & 1u) num += sums[s] * sums[s];
  }
  return Rational(num, std::int64_t{1} << (2 * spectrum.n()));
}

}  // namespace ilab

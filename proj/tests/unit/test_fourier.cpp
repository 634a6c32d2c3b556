#include <gtest/gtest.h>

#include "ilab/core/errors.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/verify/oracles.hpp"

using namespace ilab;

TEST(Wht, And2) {
  const auto spec = wht(builtin("and", 2));
  EXPECT_EQ(spec.coeff(0), Rational(1, 2));
  EXPECT_EQ(spec.coeff(1), Rational(1, 2));
  EXPECT_EQ(spec.coeff(2), Rational(1, 2));
  EXPECT_EQ(spec.coeff(3), Rational(-1, 2));
}

TEST(Wht, ParityAndConstant) {
  for (int n = 1; n <= 10; ++n) {
    const auto spec = wht(builtin("parity", n));
    const std::uint32_t top = spec.size() - 1;
    for (std::uint32_t s = 0; s < spec.size(); ++s) EXPECT_EQ(spec.coeff(s), Rational(s == top ? 1 : 0));
    const auto zero = wht(TruthTable(n));
    EXPECT_EQ(zero.coeff(0), Rational(1));
    for (std::uint32_t s = 1; s < zero.size(); ++s) EXPECT_EQ(zero.sum(s), 0);
  }
}

TEST(Wht, MatchesDirectSums) {
  for (int n = 1; n <= 9; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto t = random_table(n, seed + 100 * n);
      const auto spec = wht(t);
      const auto direct = oracle::direct_fourier_sums(t);
      ASSERT_TRUE(std::equal(spec.sums().begin(), spec.sums().end(), direct.begin(), direct.end())) << n;
    }
  }
}

TEST(Wht, ParsevalAndInverse) {
  for (int n = 1; n <= 14; ++n) {
    const auto t = random_table(n, 7 * n);
    const auto spec = wht(t);
    EXPECT_EQ(spec.parseval_sum(), Rational(1));
    std::int64_t total = 0;
    for (auto w : spec.weight_distribution()) total += w;
    EXPECT_EQ(total, std::int64_t{1} << (2 * n));
    EXPECT_EQ(inverse_wht(spec), t);
  }
  EXPECT_EQ(inverse_wht(wht(builtin("parity", 4))), builtin("parity", 4));
}

TEST(Wht, ParsevalAtTwentyVariables) {
  const auto spec = wht(random_table(20, 2024));
  EXPECT_EQ(spec.parseval_sum(), Rational(1));
}

TEST(Wht, InverseRejectsNonBooleanSpectra) {
  EXPECT_THROW(inverse_wht(FourierSpectrum(2, {0, 0, 0, 0})), ConsistencyError);
  EXPECT_THROW(inverse_wht(FourierSpectrum(2, {2, 2, 0, 0})), ConsistencyError);
}

TEST(Degree, Examples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(spectral_degree(wht(builtin("parity", n))), n);
    EXPECT_EQ(spectral_degree(wht(builtin("and", n))), n);
    EXPECT_EQ(spectral_degree(wht(builtin("const1", n))), 0);
  }
  EXPECT_EQ(spectral_degree(wht(builtin("and", 2))), 2);
  const auto f = iterated_base_function();
  EXPECT_EQ(spectral_degree(wht(f)), oracle::monomial_degree(f));
}

TEST(Degree, ComplementInvariantAndMatchesMonomialBasis) {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto t = random_table(n, seed * 13 + n);
      const int d = spectral_degree(wht(t));
      EXPECT_EQ(d, spectral_degree(wht(t.complement())));
      EXPECT_EQ(d, oracle::monomial_degree(t));
    }
  }
}

TEST(Rho, Examples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(rho_from_spectrum(wht(builtin("parity", n))), Rational(1));
    EXPECT_EQ(rho_from_spectrum(wht(builtin("const0", n))), Rational(0));
  }
  EXPECT_EQ(rho_from_spectrum(wht(builtin("and", 2))), Rational(1, 2));
  EXPECT_EQ(influence_from_spectrum(wht(builtin("and", 2)), 0), Rational(1, 2));
}

TEST(Spectrum, ConstructorValidation) {
  EXPECT_THROW(FourierSpectrum(2, {1, 2, 3}), InputError);
}

#include <gtest/gtest.h>

#include <chrono>
#include <numeric>
#include <random>

#include "ilab/core/errors.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/measures/measures.hpp"
#include "ilab/verify/oracles.hpp"

using namespace ilab;

TEST(Influence, Examples) {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(influence(builtin("parity", n), i), Rational(1));
      EXPECT_EQ(influence(builtin("const1", n), i), Rational(0));
    }
  }
  EXPECT_EQ(influence(builtin("and", 2), 0), Rational(1, 2));
  EXPECT_THROW(influence(builtin("and", 2), 2), InputError);
}

TEST(Influence, MatchesDefinitionAndSpectrum) {
  for (int n = 1; n <= 9; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto t = random_table(n, seed * 3 + 1000 * n);
      const auto spec = wht(t);
      const auto infl = influences(t);
      for (int i = 0; i < n; ++i) {
        EXPECT_EQ(infl[i], oracle::influence_by_definition(t, i));
        EXPECT_EQ(infl[i], influence_from_spectrum(spec, i));
      }
      EXPECT_EQ(avg_influence(t), rho_from_spectrum(spec));
      EXPECT_EQ(avg_sensitivity(t), avg_influence(t) * Rational(n));
    }
  }
}

TEST(Sensitivity, Examples) {
  const auto f = iterated_base_function();
  EXPECT_EQ(avg_sensitivity(f), Rational(5, 2));
  EXPECT_EQ(max_sensitivity(f).value, 3);
  // S(x) = [x1 != x3] + 2
  for (std::uint32_t x = 0; x < 16; ++x) {
    const bool x1 = x & 2, x3 = x & 8;
    EXPECT_EQ(sensitivity_at(f, x), (x1 != x3) + 2) << x;
  }
  EXPECT_EQ(sensitivity_at(builtin("and", 2), 3), 2);
  EXPECT_EQ(avg_sensitivity(builtin("parity", 7)), Rational(7));
  EXPECT_EQ(max_sensitivity(builtin("const0", 4)).value, 0);
  EXPECT_THROW(sensitivity_at(f, 16), InputError);
}

TEST(Sensitivity, IteratedFamily) {
  const auto f2 = iterate(iterated_base_function(), 2);
  EXPECT_EQ(avg_sensitivity(f2), Rational(25, 4));
  EXPECT_EQ(avg_influence(f2) * Rational(16), Rational(25, 4));
}

TEST(Sensitivity, WitnessIsSmallestMaximizer) {
  for (int n = 2; n <= 10; ++n) {
    const auto t = random_table(n, 4 * n);
    const auto r = max_sensitivity(t);
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      const int s = sensitivity_at(t, x);
      EXPECT_LE(s, r.value);
      if (x < r.witness) EXPECT_LT(s, r.value);
    }
    EXPECT_EQ(sensitivity_at(t, r.witness), r.value);
  }
}

TEST(BlockSensitivity, MinimalBlocksOfBaseFunction) {
  const auto f = iterated_base_function();
  // x = (1,0,0,0): blocks {x1}, {x2}, {x0,x3}
  const auto blocks = minimal_sensitive_blocks(f, 1);
  EXPECT_NE(std::find(blocks.begin(), blocks.end(), 2u), blocks.end());
  EXPECT_NE(std::find(blocks.begin(), blocks.end(), 4u), blocks.end());
  EXPECT_NE(std::find(blocks.begin(), blocks.end(), 9u), blocks.end());
  for (auto b : blocks) {
    EXPECT_NE(f[1], f[1 ^ b]);
    for (std::uint32_t sub = (b - 1) & b; sub != 0; sub = (sub - 1) & b) EXPECT_EQ(f[1], f[1 ^ sub]);
  }
  EXPECT_EQ(block_sensitivity_at(f, 1).value, 3);
}

TEST(BlockSensitivity, Examples) {
  EXPECT_EQ(block_sensitivity(iterated_base_function()).value, 3);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(block_sensitivity(builtin("parity", n)).value, n);
  EXPECT_EQ(block_sensitivity(builtin("const1", 5)).value, 0);
  EXPECT_EQ(block_sensitivity(builtin("or", 6)).value, 6);
  EXPECT_THROW(block_sensitivity(TruthTable(17)), CapacityError);
}

TEST(BlockSensitivity, AgreesWithNaivePacking) {
  std::mt19937_64 rng(77);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto t = random_table(n, rng());
      const auto fast = block_sensitivity(t);
      ASSERT_EQ(fast.value, oracle::naive_block_sensitivity(t));
      EXPECT_TRUE(fast.exact);
      std::uint32_t used = 0;
      EXPECT_EQ(fast.witness_blocks.size(), static_cast<std::size_t>(fast.value));
      for (auto b : fast.witness_blocks) {
        EXPECT_EQ(b & used, 0u);
        EXPECT_NE(t[fast.witness_input], t[fast.witness_input ^ b]);
        used |= b;
      }
      for (std::uint32_t x = 0; x < t.size(); ++x) {
        EXPECT_EQ(block_sensitivity_at(t, x).value, oracle::naive_block_sensitivity_at(t, x));
      }
    }
  }
}

TEST(BlockSensitivity, Invariances) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n) {
    const auto t = random_table(n, rng());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int bs = block_sensitivity(t).value;
    EXPECT_EQ(bs, block_sensitivity(t.complement()).value);
    EXPECT_EQ(bs, block_sensitivity(oracle::permute_variables(t, perm)).value);
    EXPECT_GE(bs, max_sensitivity(t).value);
    EXPECT_EQ(bs, block_sensitivity(t, {.budget = std::nullopt, .serial = true}).value);
  }
}

TEST(BlockSensitivity, IteratedFamilyAtSixteenVariables) {
  const auto result = block_sensitivity(iterate(iterated_base_function(), 2));
  EXPECT_EQ(result.value, 9);
  EXPECT_TRUE(result.exact);
}

TEST(BlockSensitivity, BudgetReportsLowerBound) {
  const auto t = random_table(16, 12345);
  const auto r = block_sensitivity(t, {.budget = std::chrono::milliseconds(0), .serial = false});
  EXPECT_GE(r.value, max_sensitivity(t).value);
  if (!r.exact) SUCCEED() << "budget hit as expected";
}

TEST(Measure, AggregateSkipsBlockSensitivityWhenAsked) {
  const auto m = measure(builtin("maj", 5), {.compute_bs = false, .bs = {}});
  EXPECT_FALSE(m.block_sensitivity.has_value());
  EXPECT_EQ(m.avg_sensitivity, m.rho * Rational(5));
  const auto big = measure(builtin("parity", 18));
  EXPECT_FALSE(big.block_sensitivity.has_value());
  EXPECT_EQ(big.rho, Rational(1));
}

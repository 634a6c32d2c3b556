#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "ilab/approxdeg/approx_degree.hpp"
#include "ilab/approxdeg/simplex.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/measures/measures.hpp"
#include "ilab/verify/oracles.hpp"
#include "support/lp_vertex_oracle.hpp"

using namespace ilab;

namespace {

/// Dense column source for small hand-written LPs.
class Dense final : public lp::ColumnSource {
 public:
  explicit Dense(std::vector<std::vector<lp::Real>> rows) : rows_(std::move(rows)) {}
  int rows() const override { return static_cast<int>(rows_.size()); }
  int cols() const override { return static_cast<int>(rows_[0].size()); }
  void column(int j, std::span<lp::Real> out) const override {
    for (int i = 0; i < rows(); ++i) out[i] = rows_[i][j];
  }
  void price(std::span<const lp::Real> y, std::span<lp::Real> out) const override {
    for (int j = 0; j < cols(); ++j) {
      out[j] = 0;
      for (int i = 0; i < rows(); ++i) out[j] += y[i] * rows_[i][j];
    }
  }

 private:
  std::vector<std::vector<lp::Real>> rows_;
};

}  // namespace

TEST(Simplex, SmallDenseProblem) {
  // max 3a + 2b  s.t.  a + b + s1 = 4,  a + 3b + s2 = 6
  Dense a({{1, 1, 1, 0}, {1, 3, 0, 1}});
  const std::vector<lp::Real> b{4, 6}, c{3, 2, 0, 0};
  const auto sol = lp::solve(a, b, c);
  ASSERT_EQ(sol.status, lp::Status::Optimal);
  EXPECT_NEAR(static_cast<double>(sol.objective), 12.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(sol.x[0]), 4.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(sol.duals[0]), 3.0, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  Dense infeasible({{1, 1}, {1, 1}});
  const std::vector<lp::Real> b{1, 2}, c{1, 1};
  EXPECT_EQ(lp::solve(infeasible, b, c).status, lp::Status::Infeasible);
  Dense unbounded({{1, -1}});
  const std::vector<lp::Real> b1{1}, c1{0, 1};
  EXPECT_EQ(lp::solve(unbounded, b1, c1).status, lp::Status::Unbounded);
  const std::vector<lp::Real> negative{-1};
  EXPECT_THROW(lp::solve(unbounded, negative, c1), InputError);
}

TEST(Simplex, IterationCapIsReported) {
  Dense a({{1, 1, 1, 0}, {1, 3, 0, 1}});
  const std::vector<lp::Real> b{4, 6}, c{3, 2, 0, 0};
  lp::SimplexOptions options;
  options.max_iterations = 1;
  EXPECT_EQ(lp::solve(a, b, c, options).status, lp::Status::IterationLimit);
}

TEST(ExactDegree, Examples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(exact_degree(builtin("parity", n)), n);
    EXPECT_EQ(exact_degree(builtin("and", n)), n);
  }
  const auto f = iterated_base_function();
  EXPECT_EQ(exact_degree(f), oracle::monomial_degree(f));
  EXPECT_EQ(exact_degree(builtin("const1", 3)), 0);
}

TEST(Poly, DegreeBoundEnforced) {
  EXPECT_THROW(MultilinearPoly(3, 1, {{3u, 1.0}}), InputError);
  const MultilinearPoly p(3, 2, {{0u, 0.5}, {3u, 0.25}});
  EXPECT_DOUBLE_EQ(p.coeff(3), 0.25);
  EXPECT_DOUBLE_EQ(p.coeff(1), 0.0);
  EXPECT_DOUBLE_EQ(p.evaluate(1), 0.25);
  const auto v = p.values();
  for (std::uint32_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(v[x], p.evaluate(x));
}

TEST(MinError, Or2DegreeOneAgreesWithVertexOracle) {
  const auto or2 = builtin("or", 2);
  const auto fit = min_error_at_degree(or2, 1);
  const auto oracle = test_oracle::vertex_enumeration_fit(or2, 1);
  EXPECT_NEAR(fit.t_star, oracle.t_star, 1e-9);
  // The optimum equioscillates: p = 1/4 + x0/2 + x1/2 errs by exactly 1/4 everywhere.
  EXPECT_NEAR(fit.t_star, 0.25, 1e-12);
  const MultilinearPoly p(2, 1, {{0u, 0.75}, {1u, -0.25}, {2u, -0.25}});
  EXPECT_NEAR(p.max_error(or2), 0.25, 1e-15);
  // (1 + x0 + x1)/3 is feasible at 1/3 but not optimal.
  const MultilinearPoly third(2, 1, {{0u, 2.0 / 3}, {1u, -1.0 / 6}, {2u, -1.0 / 6}});
  EXPECT_NEAR(third.max_error(or2), 1.0 / 3, 1e-15);
}

TEST(MinError, AgreesWithVertexOracleOnSmallFunctions) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < (n == 3 ? 6u : 8u); ++seed) {
      const auto t = random_table(n, seed * 17 + n);
      for (int d = 0; d < n; ++d) {
        if (n == 3 && d == 2) continue;  // C(16, 8) vertex systems per call is too slow for a unit test
        const auto fit = min_error_at_degree(t, d);
        const auto oracle = test_oracle::vertex_enumeration_fit(t, d);
        EXPECT_NEAR(fit.t_star, oracle.t_star, 1e-9) << "n=" << n << " d=" << d << " seed=" << seed;
        EXPECT_LE(fit.max_error, fit.t_star + 1e-9);
      }
    }
  }
}

TEST(MinError, ParityNeedsFullDegree) {
  const auto p4 = builtin("parity", 4);
  const auto fit = min_error_at_degree(p4, 3);
  EXPECT_GT(fit.t_star, 1.0 / 3);
  EXPECT_NEAR(fit.t_star, 0.5, 1e-9);
  EXPECT_NEAR(min_error_at_degree(p4, 4).t_star, 0.0, 1e-12);
}

TEST(MinError, NonincreasingAndZeroAtFullDegree) {
  for (int n = 2; n <= 6; ++n) {
    const auto t = random_table(n, 400 + n);
    double prev = 1.0;
    for (int d = 0; d <= n; ++d) {
      const auto fit = min_error_at_degree(t, d);
      EXPECT_LE(fit.t_star, prev + 1e-9);
      EXPECT_LE(fit.max_error, fit.t_star + 1e-9);
      for (const auto& [s, c] : fit.poly.terms()) EXPECT_LE(std::popcount(s), d);
      prev = fit.t_star;
    }
    EXPECT_NEAR(prev, 0.0, 1e-12);
  }
}

TEST(MinError, Capacity) {
  EXPECT_THROW(min_error_at_degree(random_table(13, 1), 2), CapacityError);
  EXPECT_THROW(min_error_at_degree(random_table(4, 1), 5), InputError);
}

TEST(ApproxDegree, Examples) {
  EXPECT_EQ(approx_degree(builtin("parity", 4), 1.0 / 3), 4);
  EXPECT_EQ(approx_degree(builtin("or", 2), 1.0 / 3), 1);
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto t = random_table(n, seed + 20 * n);
      EXPECT_EQ(approx_degree(t, 0.0), exact_degree(t));
    }
  }
  EXPECT_THROW(approx_degree(builtin("or", 2), 0.5), InputError);
}

TEST(ApproxDegree, ZeroErrorScanAgreesWithUpwardScan) {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto t = random_table(n, seed + 40 * n);
      const auto down = approx_degree_scan(t, 0.0);
      const auto up = approx_degree_scan(t, 1e-12);  // tiny eps takes the upward path
      ASSERT_TRUE(down.degree && up.degree);
      EXPECT_EQ(*down.degree, *up.degree);
      EXPECT_EQ(up.scan.size(), static_cast<std::size_t>(*up.degree + 1));
      for (std::size_t i = 1; i < down.scan.size(); ++i) EXPECT_LT(down.scan[i - 1].degree, down.scan[i].degree);
      ASSERT_NE(down.best(), nullptr);
      EXPECT_EQ(down.best()->degree, *down.degree);
      for (const auto& fit : down.scan) EXPECT_NEAR(fit.t_star, up.scan.at(fit.degree).t_star, 1e-9);
    }
  }
}

TEST(MinError, HighlyDegenerateVertexDoesNotStall) {
  // Used to spend the whole iteration budget on degenerate pivots at one vertex.
  const auto t = random_table(8, 8035);
  const auto fit = min_error_at_degree(t, 4);
  EXPECT_LT(fit.iterations, 20000);
  EXPECT_NEAR(fit.max_error, fit.t_star, 1e-9);
  EXPECT_GT(fit.t_star, 0.3);
}

TEST(ApproxDegree, ScanStopsAtMaxDegree) {
  const auto r = approx_degree_scan(builtin("parity", 5), 1.0 / 3, 2);
  EXPECT_FALSE(r.degree.has_value());
  EXPECT_EQ(r.scan.size(), 3u);
}

TEST(ApproxDegree, LowerBoundsHold) {
  for (int n = 2; n <= 7; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto t = random_table(n, seed * 7 + 300 * n);
      const double rho = avg_influence(t).to_double();
      const int bs = block_sensitivity(t).value;
      const int d3 = approx_degree(t, 1.0 / 3);
      EXPECT_GE(d3 + 1e-9, std::sqrt(bs / 6.0));
      EXPECT_GE(d3 + 1e-9, 0.25 * std::pow(1 - 1.0 / (4.0 / 3), 2) * rho * n);
      EXPECT_GE(approx_degree(t, 0.0) + 1e-9, 0.25 * rho * n);
    }
  }
}

TEST(EPrime, Examples) {
  const MultilinearPoly constant(3, 0, {{0u, 0.7}});
  EXPECT_NEAR(eprime_statistic(constant).enumerated, 0.0, 1e-15);
  for (std::uint32_t s = 0; s < 16; ++s) {
    const MultilinearPoly ch(4, 4, {{s, 1.0}});
    const auto e = eprime_statistic(ch);
    EXPECT_NEAR(e.enumerated, 4.0 * std::popcount(s) / 4, 1e-12);
    EXPECT_NEAR(e.spectral, e.enumerated, 1e-12);
  }
}

TEST(EPrime, SandwichForLpOptima) {
  const auto check = [](const TruthTable& t, int d) {
    const auto fit = min_error_at_degree(t, d);
    const double eps = fit.max_error;
    if (eps >= 0.5) return;
    const double rho = avg_influence(t).to_double();
    const auto e = eprime_statistic(fit.poly);
    EXPECT_GE(e.enumerated, (1 - 2 * eps) * (1 - 2 * eps) * rho - 1e-9);
    EXPECT_LE(e.enumerated, 4 * (1 + eps) * (1 + eps) * d / t.n() + 1e-9);
  };
  check(builtin("or", 2), 1);
  for (int n = 2; n <= 6; ++n) {
    const auto t = random_table(n, 70 + n);
    for (int d = 1; d <= n; ++d) check(t, d);
  }
}

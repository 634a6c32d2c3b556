#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ilab::lp {

using Real = long double;

/// Constraint matrix of  max c.x  s.t.  A x = b, x >= 0  supplied column-wise.
///
/// Pricing asks for y.A_j for every column at once so structured matrices can use a fast
/// transform instead of a dense product.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual void column(int j, std::span<Real> out) const = 0;
  /// out[j] = sum_i y[i] A[i][j] for all j.
  virtual void price(std::span<const Real> y, std::span<Real> out) const = 0;
};

struct SimplexOptions {
  int max_iterations = 200000;
  Real pivot_tolerance = 1e-11L;
  Real cost_tolerance = 1e-11L;
  /// Consecutive degenerate pivots under the largest-coefficient rule before switching to
  /// Bland's rule; Bland's rule stays on until a pivot makes progress.
  int degenerate_streak = 50;
  /// Rebuild the basis inverse from scratch every this many pivots.
  int refactor_interval = 200;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::IterationLimit;
  Real objective = 0;
  std::vector<Real> x;     // primal, size cols
  std::vector<Real> duals; // y with y.A_j >= c_j at optimality, size rows
  int iterations = 0;
};

/// Two-phase revised simplex. Requires b >= 0.
Solution solve(const ColumnSource& a, std::span<const Real> b, std::span<const Real> c,
               const SimplexOptions& options = {});

}  // namespace ilab::lp

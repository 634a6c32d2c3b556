#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ilab/core/truth_table.hpp"

namespace ilab {

/// Real polynomial p(x) = sum_s c_s (-1)^{s.x} with c_s = 0 whenever |s| > degree_bound.
class MultilinearPoly {
 public:
  MultilinearPoly(int n, int degree_bound);
  MultilinearPoly(int n, int degree_bound, std::vector<std::pair<std::uint32_t, double>> terms);

  int n() const noexcept { return n_; }
  int degree_bound() const noexcept { return degree_bound_; }
  /// Nonzero terms sorted by mask.
  const std::vector<std::pair<std::uint32_t, double>>& terms() const noexcept { return terms_; }
  double coeff(std::uint32_t s) const;

  double evaluate(std::uint32_t x) const;
  /// p at every input, via the fast transform.
  std::vector<double> values() const;
  /// max_x |p(x) - f(x)| with f read as 0/1.
  double max_error(const TruthTable& t) const;

 private:
  int n_;
  int degree_bound_;
  std::vector<std::pair<std::uint32_t, double>> terms_;
};

/// Degree of the unique multilinear representation.
int exact_degree(const TruthTable& t);

struct DegreeFit {
  int degree = 0;
  /// min over degree-<=d polynomials of max_x |p(x) - f(x)|.
  double t_star = 0.0;
  /// max_x |p(x) - f(x)| re-measured on the returned polynomial.
  double max_error = 0.0;
  MultilinearPoly poly{1, 0};
  int iterations = 0;
};

struct ApproxOptions {
  int max_vars = 12;
  /// Tolerance of the post-solve feasibility and duality re-check.
  double verify_tolerance = 1e-9;
};

/// Best uniform approximation of degree <= d by linear programming. Throws SolverError when
/// the solver fails or its answer does not survive the re-check, CapacityError above max_vars.
DegreeFit min_error_at_degree(const TruthTable& t, int d, const ApproxOptions& options = {});

struct ApproxDegreeResult {
  double eps = 0.0;
  /// Smallest d with t*_d <= eps + 1e-9; empty when max_degree stopped the scan first.
  std::optional<int> degree;
  /// The fits actually solved, ascending in d. Upward from 0 in general; at eps = 0 downward
  /// from the exact degree until the first d with t*_d > 0.
  std::vector<DegreeFit> scan;
  /// The fit at `degree`, when found.
  const DegreeFit* best() const;
};

ApproxDegreeResult approx_degree_scan(const TruthTable& t, double eps, std::optional<int> max_degree = {},
                                      const ApproxOptions& options = {});
/// Convenience form returning only the degree; throws SolverError if the scan cannot decide.
int approx_degree(const TruthTable& t, double eps, const ApproxOptions& options = {});

struct EPrime {
  double enumerated = 0.0;  // E_{x,i} |p(x) - p(x ^ e_i)|^2 by enumeration
  double spectral = 0.0;    // 4 sum_s c_s^2 |s| / n
};
/// Both evaluations; throws ConsistencyError if they differ by more than 1e-9.
EPrime eprime_statistic(const MultilinearPoly& p);

}  // namespace ilab

#include "ilab/approxdeg/approx_degree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "ilab/approxdeg/simplex.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab {

namespace {

using lp::Real;

/// Columns of the dual Chebyshev LP. Column (x, sign) has entry sign * (-1)^{s.x} in the row of
/// every low-degree mask s and 1 in the normalization row.
class ChebyshevColumns final : public lp::ColumnSource {
 public:
  ChebyshevColumns(int n, std::vector<std::uint32_t> masks) : n_(n), masks_(std::move(masks)) {}

  int rows() const override { return static_cast<int>(masks_.size()) + 1; }
  int cols() const override { return 2 << n_; }

  void column(int j, std::span<Real> out) const override {
    const auto x = static_cast<std::uint32_t>(j >> 1);
    const Real sign = (j & 1) ? -1 : 1;
    for (std::size_t r = 0; r < masks_.size(); ++r) {
      out[r] = (std::popcount(masks_[r] & x) & 1) ? -sign : sign;
    }
    out[masks_.size()] = 1;
  }

  void price(std::span<const Real> y, std::span<Real> out) const override {
    std::vector<Real> q(std::size_t{1} << n_, 0);
    for (std::size_t r = 0; r < masks_.size(); ++r) q[masks_[r]] = y[r];
    kernels::omp::wht(std::span<Real>(q));
    const Real norm = y[masks_.size()];
    for (std::size_t x = 0; x < q.size(); ++x) {
      const Real v = q[x];
      out[2 * x] = v + norm;
      out[2 * x + 1] = -v + norm;
    }
  }

 private:
  int n_;
  std::vector<std::uint32_t> masks_;
};

std::vector<std::uint32_t> masks_up_to(int n, int d) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (std::popcount(s) <= d) masks.push_back(s);
  }
  return masks;
}

void check_lp_capacity(const TruthTable& t, const ApproxOptions& options) {
  if (t.n() > options.max_vars) {
    throw CapacityError("approximate degree LP is limited to n <= " + std::to_string(options.max_vars) +
                        " (got n = " + std::to_string(t.n()) + ")");
  }
}

/// The exact multilinear form of f as a 0/1 function: f = (1 - f_sign)/2.
MultilinearPoly interpolant(const TruthTable& t) {
  const auto spectrum = wht(t);
  const int degree = spectral_degree(spectrum);
  std::vector<std::pair<std::uint32_t, double>> terms;
  for (std::uint32_t s = 0; s < spectrum.size(); ++s) {
    double c = -0.5 * spectrum.coeff_value(s);
    if (s == 0) c += 0.5;
    if (c != 0.0) terms.emplace_back(s, c);
  }
  return MultilinearPoly(t.n(), degree, std::move(terms));
}

}  // namespace

MultilinearPoly::MultilinearPoly(int n, int degree_bound) : n_(n), degree_bound_(degree_bound) {
  if (n < 1 || n > kMaxVars) throw CapacityError("polynomial variable count out of range");
  if (degree_bound < 0 || degree_bound > n) throw InputError("degree bound must lie in [0, n]");
}

MultilinearPoly::MultilinearPoly(int n, int degree_bound, std::vector<std::pair<std::uint32_t, double>> terms)
    : MultilinearPoly(n, degree_bound) {
  std::sort(terms.begin(), terms.end());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto [s, c] = terms[i];
    if (s >= (std::uint32_t{1} << n)) throw InputError("polynomial mask out of range");
    if (i > 0 && terms[i - 1].first == s) throw InputError("duplicate polynomial mask");
    if (!std::isfinite(c)) throw InputError("polynomial coefficient is not finite");
    if (c != 0.0 && std::popcount(s) > degree_bound) {
      throw InputError("coefficient on mask " + std::to_string(s) + " exceeds the degree bound");
    }
    if (c != 0.0) terms_.emplace_back(s, c);
  }
}

double MultilinearPoly::coeff(std::uint32_t s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(s, -std::numeric_limits<double>::infinity()));
  return (it != terms_.end() && it->first == s) ? it->second : 0.0;
}

double MultilinearPoly::evaluate(std::uint32_t x) const {
  double v = 0.0;
  for (const auto& [s, c] : terms_) v += (std::popcount(s & x) & 1) ? -c : c;
  return v;
}

std::vector<double> MultilinearPoly::values() const {
  std::vector<double> v(std::size_t{1} << n_, 0.0);
  for (const auto& [s, c] : terms_) v[s] = c;
  kernels::omp::wht(std::span<double>(v));
  return v;
}

double MultilinearPoly::max_error(const TruthTable& t) const {
  if (t.n() != n_) throw InputError("polynomial and table have different variable counts");
  const auto v = values();
  double worst = 0.0;
  for (std::uint32_t x = 0; x < t.size(); ++x) worst = std::max(worst, std::abs(v[x] - (t[x] ? 1.0 : 0.0)));
  return worst;
}

int exact_degree(const TruthTable& t) { return spectral_degree(wht(t)); }

DegreeFit min_error_at_degree(const TruthTable& t, int d, const ApproxOptions& options) {
  check_lp_capacity(t, options);
  if (d < 0 || d > t.n()) throw InputError("degree must lie in [0, n]");

  DegreeFit fit;
  fit.degree = d;
  if (d >= exact_degree(t)) {
    MultilinearPoly exact = interpolant(t);
    fit.poly = MultilinearPoly(t.n(), d, exact.terms());
    fit.t_star = 0.0;
    fit.max_error = fit.poly.max_error(t);
    if (fit.max_error > options.verify_tolerance) throw ConsistencyError("interpolant does not reproduce f");
    return fit;
  }

  // Dual of  min t  s.t. |p(x) - f(x)| <= t:  maximize sum_x f(x)(u_x - v_x) over u, v >= 0 with
  // sum_x (u_x - v_x)(-1)^{s.x} = 0 for |s| <= d and sum_x (u_x + v_x) = 1. The simplex
  // multipliers of the first rows are the coefficients of p and the last one is t*.
  auto masks = masks_up_to(t.n(), d);
  const std::size_t rows = masks.size() + 1;
  ChebyshevColumns columns(t.n(), masks);
  std::vector<Real> b(rows, 0);
  b.back() = 1;
  std::vector<Real> c(static_cast<std::size_t>(columns.cols()));
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    c[2 * x] = t[x] ? 1 : 0;
    c[2 * x + 1] = t[x] ? -1 : 0;
  }
  const auto sol = lp::solve(columns, b, c);
  fit.iterations = sol.iterations;
  if (sol.status != lp::Status::Optimal) {
    const char* why = sol.status == lp::Status::Infeasible  ? "infeasible"
                      : sol.status == lp::Status::Unbounded ? "unbounded"
                                                            : "iteration limit";
    throw SolverError("LP for degree " + std::to_string(d) + " did not reach optimality (" + why + ")");
  }

  std::vector<std::pair<std::uint32_t, double>> terms;
  for (std::size_t r = 0; r < masks.size(); ++r) terms.emplace_back(masks[r], static_cast<double>(sol.duals[r]));
  fit.poly = MultilinearPoly(t.n(), d, std::move(terms));
  fit.t_star = static_cast<double>(sol.duals.back());
  fit.max_error = fit.poly.max_error(t);

  // Re-check: p is feasible at level t*, and the dual weights certify nothing smaller exists.
  const double tol = options.verify_tolerance;
  if (fit.max_error > fit.t_star + tol) {
    throw SolverError("degree-" + std::to_string(d) + " polynomial violates |p - f| <= t* (" +
                      std::to_string(fit.max_error) + " > " + std::to_string(fit.t_star) + ")");
  }
  std::vector<Real> residual(rows, 0);
  for (int j = 0; j < columns.cols(); ++j) {
    const Real w = sol.x[j];
    if (w < -tol) throw SolverError("LP returned negative weights");
    if (w == 0) continue;
    std::vector<Real> col(rows);
    columns.column(j, col);
    for (std::size_t r = 0; r < rows; ++r) residual[r] += w * col[r];
  }
  residual.back() -= 1;
  for (auto r : residual) {
    if (std::abs(r) > tol) throw SolverError("LP weights violate the orthogonality constraints");
  }
  if (std::abs(static_cast<double>(sol.objective) - fit.t_star) > tol) {
    throw SolverError("LP duality gap exceeds tolerance");
  }
  return fit;
}

ApproxDegreeResult approx_degree_scan(const TruthTable& t, double eps, std::optional<int> max_degree,
                                      const ApproxOptions& options) {
  if (!(eps >= 0.0 && eps < 0.5)) throw InputError("approximation error must lie in [0, 1/2)");
  check_lp_capacity(t, options);
  ApproxDegreeResult result;
  result.eps = eps;
  const int exact = exact_degree(t);
  const int top = std::min(exact, max_degree.value_or(t.n()));
  if (eps == 0.0 && top == exact) {
    // t*_d is nonincreasing in d, so walking down from the exact degree needs only the LPs
    // above the answer; at eps = 0 that is normally the single one at exact - 1.
    result.scan.push_back(min_error_at_degree(t, exact, options));
    result.degree = exact;
    for (int d = exact - 1; d >= 0; --d) {
      auto fit = min_error_at_degree(t, d, options);
      const bool fits = fit.t_star <= eps + 1e-9;
      result.scan.insert(result.scan.begin(), std::move(fit));
      if (!fits) break;
      result.degree = d;
    }
    return result;
  }
  for (int d = 0; d <= top; ++d) {
    result.scan.push_back(min_error_at_degree(t, d, options));
    if (result.scan.back().t_star <= eps + 1e-9) {
      result.degree = d;
      break;
    }
  }
  return result;
}

const DegreeFit* ApproxDegreeResult::best() const {
  if (!degree) return nullptr;
  for (const auto& fit : scan) {
    if (fit.degree == *degree) return &fit;
  }
  return nullptr;
}

int approx_degree(const TruthTable& t, double eps, const ApproxOptions& options) {
  const auto result = approx_degree_scan(t, eps, {}, options);
  if (!result.degree) throw SolverError("approximate degree scan did not terminate");
  return *result.degree;
}

EPrime eprime_statistic(const MultilinearPoly& p) {
  const int n = p.n();
  const auto v = p.values();
  long double total = 0.0L;
  for (std::uint32_t x = 0; x < v.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      const double diff = v[x] - v[x ^ (std::uint32_t{1} << i)];
      total += static_cast<long double>(diff) * diff;
    }
  }
  EPrime e;
  e.enumerated = static_cast<double>(total / (static_cast<long double>(v.size()) * n));
  long double spectral = 0.0L;
  for (const auto& [s, c] : p.terms()) spectral += static_cast<long double>(c) * c * std::popcount(s);
  e.spectral = static_cast<double>(4.0L * spectral / n);
  if (std::abs(e.enumerated - e.spectral) > 1e-9) {
    throw ConsistencyError("E' by enumeration and by spectrum disagree");
  }
  return e;
}

}  // namespace ilab

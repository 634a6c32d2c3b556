#include "ilab/approxdeg/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <type_traits>

#include "ilab/core/errors.hpp"

namespace ilab::lp {

namespace {

/// Raised when a refactorization finds the basis numerically singular.
struct SingularBasis {};

/// Revised simplex state over scalar type T. Artificial variable i (index n + i) is the unit
/// column of row i.
template <typename T>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  Tableau(const ColumnSource& a, std::span<const Real> b, const SimplexOptions& options)
      : a_(a), m_(a.rows()), n_(a.cols()), options_(options), b_(m_), binv_(Matrix::Identity(m_, m_)),
        xb_(m_), basis_(m_), column_(m_), wide_(m_), priced_(n_), row_price_(n_) {
    // double drifts well above 1e-11; tiny pivots there are usually true zeros
    if constexpr (std::is_same_v<T, double>) {
      options_.pivot_tolerance = std::max<Real>(options_.pivot_tolerance, 1e-9L);
    }
    for (int i = 0; i < m_; ++i) {
      b_(i) = static_cast<T>(b[i]);
      xb_(i) = b_(i);
      basis_[i] = n_ + i;
    }
    rhs_ = b_;
  }

  bool is_artificial(int var) const { return var >= n_; }
  const std::vector<int>& basis() const { return basis_; }

  void set_basis(const std::vector<int>& basis) {
    basis_ = basis;
    refactor();
  }

  /// Runs the simplex on cost vector `costs` (size n + m). Artificial columns never enter.
  ///
  /// Entering columns are chosen by Devex reference weights. A long run of degenerate pivots
  /// shifts the right-hand side by a tiny seeded amount so the vertex splits; the shift is
  /// removed at optimality and any lost feasibility restored by dual simplex pivots. Should
  /// stalling persist after a few shifts, Bland's rule takes over until a pivot makes progress.
  Status optimize(const std::vector<Real>& costs, int& iterations) {
    const T tol_cost = static_cast<T>(options_.cost_tolerance);
    const T tol_pivot = static_cast<T>(options_.pivot_tolerance);
    if (!restore_feasibility(costs, iterations)) return Status::IterationLimit;
    int streak = 0;
    bool bland = false;
    int shifts = 0;
    std::vector<T> weight(n_, 1);
    Vector y = duals(costs);
    while (true) {
      if (iterations >= options_.max_iterations) return Status::IterationLimit;
      if (since_refactor_ >= options_.refactor_interval) {
        refactor();
        y = duals(costs);
      }

      price(y, priced_);
      mark_basic();

      int entering = -1;
      T best = 0;
      T best_d = 0;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        const T d = static_cast<T>(costs[j]) - priced_[j];
        if (d <= tol_cost) continue;
        if (bland) {
          entering = j;
          best_d = d;
          break;
        }
        const T score = d * d / weight[j];
        if (score > best) {
          best = score;
          best_d = d;
          entering = j;
        }
      }
      if (entering < 0) {
        if (!shifted_) return Status::Optimal;
        unshift();
        if (!restore_feasibility(costs, iterations)) return Status::IterationLimit;
        y = duals(costs);
        streak = 0;
        continue;
      }

      load_column(entering);
      const Vector alpha = binv_ * column_;
      int leaving = -1;
      T ratio = std::numeric_limits<T>::infinity();
      const T tie = std::is_same_v<T, double> ? T(1e-12) : T(1e-15);
      for (int i = 0; i < m_; ++i) {
        if (alpha(i) <= tol_pivot) continue;
        const T r = std::max<T>(xb_(i), 0) / alpha(i);
        if (leaving < 0 || r < ratio - tie) {
          ratio = r;
          leaving = i;
        } else if (r <= ratio + tie) {
          // Among ties prefer the larger pivot, then Bland's smallest index.
          const bool larger = alpha(i) > alpha(leaving) * (1 + T(1e-9));
          const bool same = !larger && alpha(i) >= alpha(leaving) * (1 - T(1e-9));
          if ((!bland && larger) || ((bland || same) && basis_[i] < basis_[leaving])) leaving = i;
          ratio = std::min(ratio, r);
        }
      }
      if (leaving < 0) return Status::Unbounded;

      // Pivot row (B^-1)_r A, shared by the dual update and the Devex weights.
      const Vector rho = binv_.row(leaving).transpose();
      price(rho, row_price_);
      const T ar = alpha(leaving);
      if (!bland) {
        const T wq = weight[entering];
        for (int j = 0; j < n_; ++j) {
          if (in_basis_[j] || j == entering) continue;
          const T ratio_j = row_price_[j] / ar;
          weight[j] = std::max(weight[j], ratio_j * ratio_j * wq);
        }
        const int out = basis_[leaving];
        if (!is_artificial(out)) weight[out] = std::max<T>(wq / (ar * ar), 1);
      }
      y += (best_d / ar) * rho;

      pivot(leaving, entering, alpha, ratio);
      ++iterations;
      if (ratio <= tol_pivot) {
        if (++streak >= options_.degenerate_streak) {
          if (shifts < kMaxShifts) {
            shift(++shifts);
            streak = 0;
          } else {
            bland = true;
          }
        }
      } else {
        streak = 0;
        bland = false;
      }
    }
  }

  /// Pivot zero-level artificials out of the basis where a structural column can replace them.
  void drive_out_artificials() {
    const T tol_pivot = static_cast<T>(options_.pivot_tolerance);
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      mark_basic();
      const Vector row = binv_.row(i).transpose();
      price(row, row_price_);
      int entering = -1;
      T best = tol_pivot;
      for (int j = 0; j < n_; ++j) {
        if (!in_basis_[j] && std::abs(row_price_[j]) > best) {
          best = std::abs(row_price_[j]);
          entering = j;
        }
      }
      // No candidate: row i is a combination of the others and the artificial stays at zero.
      if (entering < 0) continue;
      load_column(entering);
      const Vector alpha = binv_ * column_;
      pivot(i, entering, alpha, 0);
    }
  }

  Vector duals(const std::vector<Real>& costs) const {
    Vector cb(m_);
    for (int i = 0; i < m_; ++i) cb(i) = static_cast<T>(costs[basis_[i]]);
    return binv_.transpose() * cb;
  }

  T objective(const std::vector<Real>& costs) const {
    T total = 0;
    for (int i = 0; i < m_; ++i) total += static_cast<T>(costs[basis_[i]]) * xb_(i);
    return total;
  }

  std::vector<Real> primal() const {
    std::vector<Real> x(n_, 0);
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) x[basis_[i]] = xb_(i);
    }
    return x;
  }

  T artificial_level() const {
    T total = 0;
    for (int i = 0; i < m_; ++i) {
      if (is_artificial(basis_[i])) total += std::abs(xb_(i));
    }
    return total;
  }

  /// Dual simplex pivots until the basic solution is nonnegative again. Assumes the basis is
  /// (nearly) dual feasible, which holds after removing a shift at optimality.
  bool restore_feasibility(const std::vector<Real>& costs, int& iterations) {
    const T tol_feas = std::is_same_v<T, double> ? T(1e-9) : T(1e-13);
    const T tol_pivot = static_cast<T>(options_.pivot_tolerance);
    while (true) {
      int row = -1;
      for (int i = 0; i < m_; ++i) {
        if (xb_(i) < -tol_feas && (row < 0 || xb_(i) < xb_(row))) row = i;
      }
      if (row < 0) return true;
      if (iterations >= options_.max_iterations) return false;
      if (since_refactor_ >= options_.refactor_interval) {
        refactor();
        continue;
      }
      const Vector y = duals(costs);
      price(y, priced_);
      const Vector rho = binv_.row(row).transpose();
      price(rho, row_price_);
      mark_basic();
      int entering = -1;
      T best = std::numeric_limits<T>::infinity();
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j] || row_price_[j] >= -tol_pivot) continue;
        const T d = std::max<T>(priced_[j] - static_cast<T>(costs[j]), 0);
        const T r = d / -row_price_[j];
        if (r < best) {
          best = r;
          entering = j;
        }
      }
      if (entering < 0) throw SingularBasis{};  // no column can repair the row
      load_column(entering);
      const Vector alpha = binv_ * column_;
      if (!(alpha(row) < 0)) throw SingularBasis{};
      pivot(row, entering, alpha, xb_(row) / alpha(row));
      ++iterations;
    }
  }

  void refactor() {
    Matrix basis_matrix(m_, m_);
    for (int i = 0; i < m_; ++i) {
      if (is_artificial(basis_[i])) {
        basis_matrix.col(i).setZero();
        basis_matrix(basis_[i] - n_, i) = 1;
      } else {
        load_column(basis_[i]);
        basis_matrix.col(i) = column_;
      }
    }
    Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) throw SingularBasis{};
    xb_ = binv_ * rhs_;
    const Vector ones = Vector::Ones(m_);
    const T defect = std::max((basis_matrix * xb_ - rhs_).cwiseAbs().maxCoeff(),
                              (basis_matrix * (binv_ * ones) - ones).cwiseAbs().maxCoeff());
    if (!(defect < T(1e-6))) throw SingularBasis{};
    since_refactor_ = 0;
  }

 private:
  static constexpr int kMaxShifts = 3;

  /// Raises every degenerate basic variable by a small seeded amount, moving the right-hand
  /// side to match.
  void shift(int round) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(round));
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    const T scale = std::is_same_v<T, double> ? T(1e-7) : T(1e-10);
    const T tol_pivot = static_cast<T>(options_.pivot_tolerance);
    for (int i = 0; i < m_; ++i) {
      if (xb_(i) > tol_pivot) continue;
      const T delta = scale * static_cast<T>(unit(rng));
      xb_(i) += delta;
      if (is_artificial(basis_[i])) {
        rhs_(basis_[i] - n_) += delta;
      } else {
        load_column(basis_[i]);
        rhs_ += delta * column_;
      }
    }
    shifted_ = true;
  }

  void unshift() {
    rhs_ = b_;
    shifted_ = false;
    refactor();
  }

  void load_column(int j) {
    a_.column(j, std::span<Real>(wide_.data(), m_));
    for (int i = 0; i < m_; ++i) column_(i) = static_cast<T>(wide_[i]);
  }

  void price(const Vector& y, std::vector<T>& out) {
    std::vector<Real> yw(y.data(), y.data() + m_);
    std::vector<Real> result(n_);
    a_.price(yw, result);
    for (int j = 0; j < n_; ++j) out[j] = static_cast<T>(result[j]);
  }

  void mark_basic() {
    in_basis_.assign(n_, false);
    for (int v : basis_) {
      if (!is_artificial(v)) in_basis_[v] = true;
    }
  }

  void pivot(int row, int entering, const Vector& alpha, T step) {
    const T p = alpha(row);
    xb_ -= step * alpha;
    xb_(row) = step;
    binv_.row(row) /= p;
    Vector factors = alpha;
    factors(row) = 0;
    const Eigen::Matrix<T, 1, Eigen::Dynamic> pivot_row = binv_.row(row);
    binv_.noalias() -= factors * pivot_row;
    basis_[row] = entering;
    ++since_refactor_;
  }

  const ColumnSource& a_;
  int m_;
  int n_;
  SimplexOptions options_;
  Vector b_;
  /// b plus any active shift.
  Vector rhs_;
  bool shifted_ = false;
  Matrix binv_;
  Vector xb_;
  std::vector<int> basis_;
  Vector column_;
  std::vector<Real> wide_;
  std::vector<T> priced_;
  std::vector<T> row_price_;
  std::vector<bool> in_basis_;
  int since_refactor_ = 0;
};


/// Both simplex phases over T; with `polish` the final basis is re-optimized in long double.
template <typename T, bool polish>
Solution run_two_phase(const ColumnSource& a, std::span<const Real> b, std::span<const Real> c,
                       const SimplexOptions& options) {
  const int m = a.rows();
  const int n = a.cols();
  Tableau<T> first(a, b, options);
  Solution sol;

  std::vector<Real> phase1(n + m, 0);
  for (int i = 0; i < m; ++i) phase1[n + i] = -1;
  Status status = first.optimize(phase1, sol.iterations);
  if (status != Status::Optimal) {
    sol.status = status;
    return sol;
  }
  first.refactor();
  if (first.artificial_level() > 1e-9) {
    sol.status = Status::Infeasible;
    return sol;
  }
  first.drive_out_artificials();
  first.refactor();

  std::vector<Real> phase2(n + m, 0);
  std::copy(c.begin(), c.end(), phase2.begin());
  status = first.optimize(phase2, sol.iterations);
  if (status != Status::Optimal) {
    sol.status = status;
    return sol;
  }

  auto finish = [&](Tableau<Real>& exact) {
    exact.refactor();
    sol.status = Status::Optimal;
    sol.objective = exact.objective(phase2);
    sol.x = exact.primal();
    const auto y = exact.duals(phase2);
    sol.duals.assign(y.data(), y.data() + m);
    return sol;
  };
  if constexpr (polish) {
    Tableau<Real> exact(a, b, options);
    exact.set_basis(first.basis());
    status = exact.optimize(phase2, sol.iterations);
    sol.status = status;
    if (status != Status::Optimal) return sol;
    return finish(exact);
  } else {
    return finish(first);
  }
}

}  // namespace

Solution solve(const ColumnSource& a, std::span<const Real> b, std::span<const Real> c,
               const SimplexOptions& options) {
  const int m = a.rows();
  const int n = a.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n) {
    throw InputError("LP dimensions do not match the constraint matrix");
  }
  if (std::any_of(b.begin(), b.end(), [](Real v) { return v < 0; })) {
    throw InputError("LP right-hand side must be nonnegative");
  }

  // Pivoting runs in double; the final basis is then re-factored and re-optimized in long
  // double, which normally confirms optimality without further pivots. If the double pass
  // drifts into a singular basis the whole solve is repeated in long double.
  try {
    return run_two_phase<double, true>(a, b, c, options);
  } catch (const SingularBasis&) {
  }
  try {
    return run_two_phase<Real, false>(a, b, c, options);
  } catch (const SingularBasis&) {
    throw SolverError("simplex basis became numerically singular");
  }
}

}  // namespace ilab::lp

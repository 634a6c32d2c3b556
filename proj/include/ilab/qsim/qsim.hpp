#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ilab/core/truth_table.hpp"
#include "ilab/fourier/spectrum.hpp"

namespace ilab::qsim {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kTolerance = 1e-9;
inline constexpr int kMaxDimension = 1536;

/// Basis |i>|a>|w>: index i in [0, N), answer a in {0, 1}, work w in [0, W).
/// Ordering is index-major, then answer, then work.
struct RegisterLayout {
  int n_index = 1;
  int work = 1;

  int dimension() const noexcept { return n_index * 2 * work; }
  int basis(int i, int a, int w) const noexcept { return (i * 2 + a) * work + w; }
  int index_of(int c) const noexcept { return c / (2 * work); }
  int answer_of(int c) const noexcept { return (c / work) % 2; }
  int work_of(int c) const noexcept { return c % work; }
  void validate() const;
  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

/// A D x D matrix checked to be unitary (||U^dagger U - I||_max <= 1e-9) on construction.
class Unitary {
 public:
  explicit Unitary(CMatrix matrix);
  const CMatrix& matrix() const noexcept { return matrix_; }
  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }

 private:
  struct Trusted {};
  Unitary(CMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}
  friend Unitary permutation(const RegisterLayout& layout, const std::function<int(int)>& map);

  CMatrix matrix_;
};

/// The oracle gate O_x |i, a, w> = |i, a ^ x_i, w>.
struct Query {};

using Step = std::variant<Unitary, Query>;

class Algorithm {
 public:
  /// `accept[c]` marks basis states read as output 1.
  Algorithm(std::string name, RegisterLayout layout, std::vector<Step> steps, std::vector<bool> accept);

  const std::string& name() const noexcept { return name_; }
  const RegisterLayout& layout() const noexcept { return layout_; }
  const std::vector<Step>& steps() const noexcept { return *steps_; }
  const std::vector<bool>& accept() const noexcept { return accept_; }
  int queries() const noexcept { return queries_; }

  /// Same steps with a different acceptance predicate; the steps are shared, not copied.
  Algorithm with_acceptance(std::vector<bool> accept) const;

 private:
  std::string name_;
  RegisterLayout layout_;
  std::shared_ptr<const std::vector<Step>> steps_;
  std::vector<bool> accept_;
  int queries_ = 0;
};

/// phi(x) = sum_s (-1)^{s.x} phi^_s, stored sparsely by mask s.
class FourierState {
 public:
  /// phi^_0 = |0>, nothing else.
  static FourierState init(const RegisterLayout& layout);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const std::map<std::uint32_t, CVector>& coefficients() const noexcept { return coeffs_; }
  int queries() const noexcept { return queries_; }
  std::size_t support_size() const noexcept { return coeffs_.size(); }
  /// max |s| over the support.
  int max_weight() const;
  /// sum_s ||phi^_s||^2.
  double norm_sq() const;

  /// phi^_s <- U phi^_s for every s in the support.
  void apply_unitary(const Unitary& u);
  /// phi^'_s = P_+ phi^_s + sum_i P_{-,i} phi^_{s ^ e_i}; answer |+>/|-> is the eigenbasis of the oracle.
  void apply_query();
  /// phi(x) for oracle x.
  CVector reconstruct(std::uint32_t x) const;

  /// Used by tests to start from an arbitrary coefficient family.
  static FourierState from_coefficients(const RegisterLayout& layout, std::map<std::uint32_t, CVector> coeffs,
                                        int queries);

 private:
  FourierState(RegisterLayout layout) : layout_(layout) {}

  RegisterLayout layout_;
  std::map<std::uint32_t, CVector> coeffs_;
  int queries_ = 0;
};

struct RunResult {
  FourierState state;
  /// Support size of the initial state, then after every step.
  std::vector<std::size_t> support_history;
};

/// Runs every step, checking after each one that the support has weight <= queries so far and
/// that the total squared norm is 1 within 1e-9. Violations throw ConsistencyError.
RunResult run(const Algorithm& alg);

/// Error probabilities below this are floating-point residue and are reported as exactly 0.
inline constexpr double kRoundoff = 1e-12;

struct ErrorProfile {
  std::vector<double> per_oracle;  // Pr[output != f(x)] for every x
  double worst = 0.0;
};
ErrorProfile error_profile(const Algorithm& alg, const FourierState& final_state, const TruthTable& t);
ErrorProfile error_profile(const Algorithm& alg, const TruthTable& t);

/// E = sum_a (2 - 2(1 - 2|a|/N)^k) ||phi^_a||^2 for odd k.
double e_statistic(const FourierState& state, int k);

enum class GapMode { AllPairs, Neighbors };

struct GapReport {
  GapMode mode = GapMode::AllPairs;
  double threshold = 0.0;                // 2 - 4 sqrt(eps)
  std::optional<double> min_distance_sq; // empty when no pair has f(x) != f(y)
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;          // pairs below threshold - 1e-9
};

inline constexpr int kMaxAllPairsVars = 5;
/// min ||phi(x) - phi(y)||^2 over pairs with f(x) != f(y). AllPairs requires N <= 5.
GapReport gap_check(const FourierState& state, const TruthTable& t, double eps, GapMode mode);

// --- builtin algorithms -------------------------------------------------------------------------

inline constexpr int kMaxSerialReadVars = 6;

/// Reads x_0..x_{n-1} into n work qubits with one query each; accepts where f(work) = 1.
Algorithm serial_read(const TruthTable& f);
/// Parity of n (even) bits with n/2 queries, one per pair, accumulating the parity in a phase.
Algorithm deutsch_parity(int n);
/// Amplitude amplification for OR_n: `iterations` phase queries with diffusion, then one query
/// that copies the selected bit into the answer. Accepts on answer = 1.
Algorithm grover(int n, int iterations);

/// Permutation matrix of a basis bijection; throws InputError if `map` is not a bijection.
Unitary permutation(const RegisterLayout& layout, const std::function<int(int)>& map);

}  // namespace ilab::qsim

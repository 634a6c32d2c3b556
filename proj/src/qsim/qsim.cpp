#include "ilab/qsim/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ilab/core/errors.hpp"

namespace ilab::qsim {

namespace {

// Coefficients this small are rounding residue of exact cancellations.
constexpr double kPruneNormSq = 1e-30;

}  // namespace

void RegisterLayout::validate() const {
  if (n_index < 1 || n_index > kMaxVars) throw CapacityError("index register size must lie in [1, 20]");
  if (work < 1) throw InputError("work register dimension must be >= 1");
  if (static_cast<long long>(n_index) * 2 * work > kMaxDimension) {
    throw CapacityError("register dimension " + std::to_string(static_cast<long long>(n_index) * 2 * work) +
                        " exceeds " + std::to_string(kMaxDimension));
  }
}

Unitary::Unitary(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InputError("unitary must be square");
  const CMatrix defect = matrix_.adjoint() * matrix_ - CMatrix::Identity(matrix_.rows(), matrix_.cols());
  if (defect.size() > 0 && defect.cwiseAbs().maxCoeff() > kTolerance) throw InputError("matrix is not unitary");
}

Algorithm::Algorithm(std::string name, RegisterLayout layout, std::vector<Step> steps, std::vector<bool> accept)
    : name_(std::move(name)), layout_(layout),
      steps_(std::make_shared<const std::vector<Step>>(std::move(steps))), accept_(std::move(accept)) {
  layout_.validate();
  if (static_cast<int>(accept_.size()) != layout_.dimension()) {
    throw InputError("acceptance predicate must cover every basis state");
  }
  for (const auto& step : *steps_) {
    if (std::holds_alternative<Query>(step)) {
      ++queries_;
    } else if (std::get<Unitary>(step).dimension() != layout_.dimension()) {
      throw InputError("unitary dimension does not match the register layout");
    }
  }
}

Algorithm Algorithm::with_acceptance(std::vector<bool> accept) const {
  if (accept.size() != accept_.size()) throw InputError("acceptance predicate must cover every basis state");
  Algorithm copy = *this;
  copy.accept_ = std::move(accept);
  return copy;
}

FourierState FourierState::init(const RegisterLayout& layout) {
  layout.validate();
  FourierState st(layout);
  CVector zero = CVector::Zero(layout.dimension());
  zero(0) = 1.0;
  st.coeffs_.emplace(0u, std::move(zero));
  return st;
}

FourierState FourierState::from_coefficients(const RegisterLayout& layout, std::map<std::uint32_t, CVector> coeffs,
                                             int queries) {
  layout.validate();
  for (const auto& [s, v] : coeffs) {
    if (v.size() != layout.dimension()) throw InputError("coefficient vector has the wrong dimension");
    if (s >= (std::uint32_t{1} << layout.n_index)) throw InputError("mask out of range");
  }
  FourierState st(layout);
  st.coeffs_ = std::move(coeffs);
  st.queries_ = queries;
  return st;
}

int FourierState::max_weight() const {
  int w = 0;
  for (const auto& [s, v] : coeffs_) w = std::max(w, std::popcount(s));
  return w;
}

double FourierState::norm_sq() const {
  double total = 0.0;
  for (const auto& [s, v] : coeffs_) total += v.squaredNorm();
  return total;
}

void FourierState::apply_unitary(const Unitary& u) {
  if (u.dimension() != layout_.dimension()) throw InputError("unitary dimension does not match the state");
  if (coeffs_.empty()) return;
  CMatrix block(layout_.dimension(), static_cast<Eigen::Index>(coeffs_.size()));
  Eigen::Index col = 0;
  for (const auto& [s, v] : coeffs_) block.col(col++) = v;
  const CMatrix moved = u.matrix() * block;
  col = 0;
  for (auto& [s, v] : coeffs_) v = moved.col(col++);
}

void FourierState::apply_query() {
  const int n = layout_.n_index;
  const int work = layout_.work;
  const int dim = layout_.dimension();
  std::map<std::uint32_t, CVector> next;
  auto slot = [&](std::uint32_t s) -> CVector& {
    auto it = next.find(s);
    if (it == next.end()) it = next.emplace(s, CVector::Zero(dim)).first;
    return it->second;
  };
  for (const auto& [s, v] : coeffs_) {
    CVector& keep = slot(s);
    for (int i = 0; i < n; ++i) {
      CVector* moved = nullptr;
      for (int w = 0; w < work; ++w) {
        const int c0 = layout_.basis(i, 0, w);
        const int c1 = layout_.basis(i, 1, w);
        const std::complex<double> plus = 0.5 * (v(c0) + v(c1));
        const std::complex<double> minus = 0.5 * (v(c0) - v(c1));
        keep(c0) += plus;
        keep(c1) += plus;
        if (minus != 0.0) {
          if (moved == nullptr) moved = &slot(s ^ (std::uint32_t{1} << i));
          (*moved)(c0) += minus;
          (*moved)(c1) -= minus;
        }
      }
    }
  }
  for (auto it = next.begin(); it != next.end();) {
    it = it->second.squaredNorm() < kPruneNormSq ? next.erase(it) : std::next(it);
  }
  coeffs_ = std::move(next);
  ++queries_;
}

CVector FourierState::reconstruct(std::uint32_t x) const {
  if (x >= (std::uint32_t{1} << layout_.n_index)) throw InputError("oracle index out of range");
  CVector out = CVector::Zero(layout_.dimension());
  for (const auto& [s, v] : coeffs_) {
    if (std::popcount(s & x) & 1) {
      out -= v;
    } else {
      out += v;
    }
  }
  return out;
}

RunResult run(const Algorithm& alg) {
  RunResult result{FourierState::init(alg.layout()), {}};
  auto& st = result.state;
  result.support_history.push_back(st.support_size());
  for (const auto& step : alg.steps()) {
    if (std::holds_alternative<Query>(step)) {
      st.apply_query();
    } else {
      st.apply_unitary(std::get<Unitary>(step));
    }
    result.support_history.push_back(st.support_size());
    if (st.max_weight() > st.queries()) {
      throw ConsistencyError("Fourier support exceeds weight " + std::to_string(st.queries()));
    }
    if (std::abs(st.norm_sq() - 1.0) > kTolerance) throw ConsistencyError("Fourier state lost normalization");
  }
  return result;
}

ErrorProfile error_profile(const Algorithm& alg, const FourierState& final_state, const TruthTable& t) {
  if (alg.layout().n_index != t.n()) {
    throw InputError("algorithm reads " + std::to_string(alg.layout().n_index) + " oracle bits, function has n = " +
                     std::to_string(t.n()));
  }
  ErrorProfile profile;
  profile.per_oracle.assign(t.size(), 0.0);
  const auto& accept = alg.accept();
  const auto size = static_cast<std::int64_t>(t.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t xi = 0; xi < size; ++xi) {
    const auto x = static_cast<std::uint32_t>(xi);
    const CVector phi = final_state.reconstruct(x);
    double p_accept = 0.0;
    for (int c = 0; c < phi.size(); ++c) {
      if (accept[c]) p_accept += std::norm(phi(c));
    }
    const double e = std::clamp(t[x] ? 1.0 - p_accept : p_accept, 0.0, 1.0);
    profile.per_oracle[x] = e < kRoundoff ? 0.0 : e;
  }
  for (double e : profile.per_oracle) profile.worst = std::max(profile.worst, e);
  return profile;
}

ErrorProfile error_profile(const Algorithm& alg, const TruthTable& t) {
  return error_profile(alg, run(alg).state, t);
}

double e_statistic(const FourierState& state, int k) {
  if (k < 1 || k % 2 == 0) throw InputError("k must be a positive odd integer");
  const int n = state.layout().n_index;
  double total = 0.0;
  for (const auto& [a, v] : state.coefficients()) {
    const double base = 1.0 - 2.0 * std::popcount(a) / n;
    total += (2.0 - 2.0 * std::pow(base, k)) * v.squaredNorm();
  }
  return total;
}

GapReport gap_check(const FourierState& state, const TruthTable& t, double eps, GapMode mode) {
  const int n = state.layout().n_index;
  if (t.n() != n) throw InputError("function and state have different oracle sizes");
  if (mode == GapMode::AllPairs && n > kMaxAllPairsVars) {
    throw CapacityError("all-pairs gap check is limited to N <= " + std::to_string(kMaxAllPairsVars));
  }
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("error probability must lie in [0, 1]");
  GapReport report;
  report.mode = mode;
  report.threshold = 2.0 - 4.0 * std::sqrt(eps);
  std::vector<CVector> phi(t.size());
  for (std::uint32_t x = 0; x < t.size(); ++x) phi[x] = state.reconstruct(x);
  auto visit = [&](std::uint32_t x, std::uint32_t y) {
    if (t[x] == t[y]) return;
    const double d = (phi[x] - phi[y]).squaredNorm();
    ++report.pairs;
    if (!report.min_distance_sq || d < *report.min_distance_sq) report.min_distance_sq = d;
    if (d < report.threshold - kTolerance) ++report.violations;
  };
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    if (mode == GapMode::AllPairs) {
      for (std::uint32_t y = x + 1; y < t.size(); ++y) visit(x, y);
    } else {
      for (int i = 0; i < n; ++i) {
        const std::uint32_t y = x ^ (std::uint32_t{1} << i);
        if (y > x) visit(x, y);
      }
    }
  }
  return report;
}

}  // namespace ilab::qsim

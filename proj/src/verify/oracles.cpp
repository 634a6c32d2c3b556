#include "ilab/verify/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "ilab/core/errors.hpp"

namespace ilab::oracle {

std::vector<std::int64_t> direct_fourier_sums(const TruthTable& t) {
  std::vector<std::int64_t> sums(t.size(), 0);
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    std::int64_t total = 0;
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      const int fx = t[x] ? -1 : 1;
      total += (std::popcount(s & x) & 1) ? -fx : fx;
    }
    sums[s] = total;
  }
  return sums;
}

std::vector<std::int64_t> monomial_coefficients(const TruthTable& t) {
  // a_S = sum_{T subset of S} (-1)^{|S| - |T|} f(T)
  std::vector<std::int64_t> coeffs(t.size(), 0);
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    std::int64_t total = 0;
    std::uint32_t sub = s;
    while (true) {
      if (t[sub]) total += (std::popcount(s ^ sub) & 1) ? -1 : 1;
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    coeffs[s] = total;
  }
  return coeffs;
}

int monomial_degree(const TruthTable& t) {
  const auto coeffs = monomial_coefficients(t);
  int degree = 0;
  for (std::uint32_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] != 0) degree = std::max(degree, std::popcount(s));
  }
  return degree;
}

Rational influence_by_definition(const TruthTable& t, int i) {
  std::int64_t count = 0;
  for (std::uint32_t x = 0; x < t.size(); ++x) count += t[x] != t[x ^ (std::uint32_t{1} << i)];
  return Rational(count, t.size());
}

int naive_block_sensitivity_at(const TruthTable& t, std::uint32_t x) {
  std::vector<std::uint32_t> blocks;
  for (std::uint32_t b = 1; b < t.size(); ++b) {
    if (t[x] != t[x ^ b]) blocks.push_back(b);
  }
  int best = 0;
  std::function<void(std::size_t, std::uint32_t, int)> extend = [&](std::size_t from, std::uint32_t used, int count) {
    best = std::max(best, count);
    for (std::size_t j = from; j < blocks.size(); ++j) {
      if ((blocks[j] & used) == 0) extend(j + 1, used | blocks[j], count + 1);
    }
  };
  extend(0, 0, 0);
  return best;
}

int naive_block_sensitivity(const TruthTable& t) {
  int best = 0;
  for (std::uint32_t x = 0; x < t.size(); ++x) best = std::max(best, naive_block_sensitivity_at(t, x));
  return best;
}

qsim::CVector direct_final_state(const qsim::Algorithm& alg, std::uint32_t x) {
  const auto& layout = alg.layout();
  qsim::CVector psi = qsim::CVector::Zero(layout.dimension());
  psi(0) = 1.0;
  for (const auto& step : alg.steps()) {
    if (const auto* u = std::get_if<qsim::Unitary>(&step)) {
      psi = u->matrix() * psi;
      continue;
    }
    qsim::CVector next(layout.dimension());
    for (int c = 0; c < layout.dimension(); ++c) {
      const int i = layout.index_of(c);
      const int a = layout.answer_of(c) ^ static_cast<int>((x >> i) & 1u);
      next(layout.basis(i, a, layout.work_of(c))) = psi(c);
    }
    psi = std::move(next);
  }
  return psi;
}

double direct_e_statistic(const std::vector<qsim::CVector>& states, int n, int k) {
  std::vector<int> digits(k, 0);
  long double total = 0.0L;
  std::uint64_t count = 0;
  while (true) {
    std::uint32_t flip = 0;
    for (int d : digits) flip ^= std::uint32_t{1} << d;
    for (std::uint32_t x = 0; x < states.size(); ++x) {
      total += (states[x] - states[x ^ flip]).squaredNorm();
      ++count;
    }
    int pos = 0;
    while (pos < k && ++digits[pos] == n) digits[pos++] = 0;
    if (pos == k) break;
  }
  return static_cast<double>(total / count);
}

TruthTable permute_variables(const TruthTable& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.n()) throw InputError("permutation length must equal n");
  return TruthTable::from_function(t.n(), [&](std::uint32_t x) {
    std::uint32_t y = 0;
    for (int i = 0; i < t.n(); ++i) {
      if ((x >> i) & 1u) y |= std::uint32_t{1} << perm[i];
    }
    return t[y];
  });
}

}  // namespace ilab::oracle

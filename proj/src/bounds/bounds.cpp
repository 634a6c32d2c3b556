#include "ilab/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab {

namespace {

void check_odd(int k) {
  if (k < 1 || k % 2 == 0) throw InputError("k must be a positive odd integer, got " + std::to_string(k));
}

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InputError("error probability must lie in [0, 1)");
}

BoundValue clamp(double raw, bool vacuous) {
  if (raw < 0.0) return {0.0, true};
  return {raw, vacuous};
}

}  // namespace

double noise_correlation(const FourierSpectrum& spectrum, int k) {
  if (k < 1) throw InputError("k must be positive");
  const int n = spectrum.n();
  const auto weights = spectrum.weight_distribution();
  const long double scale = std::ldexp(1.0L, -2 * n);
  long double total = 0.0L;
  for (int w = 0; w <= n; ++w) {
    if (weights[w] == 0) continue;
    const long double base = static_cast<long double>(n - 2 * w) / n;
    total += static_cast<long double>(weights[w]) * scale * std::pow(base, k);
  }
  return static_cast<double>(total);
}

double flip_prob_spectral(const FourierSpectrum& spectrum, int k) {
  check_odd(k);
  return 0.5 - 0.5 * noise_correlation(spectrum, k);
}

Rational flip_prob_bruteforce(const TruthTable& t, int k) {
  check_odd(k);
  const double work = std::pow(static_cast<double>(t.n()), k) * t.size();
  if (work > kBruteForceLimit) {
    throw CapacityError("brute-force flip probability needs n^k 2^n <= 1e8 (got " + std::to_string(work) + ")");
  }
  std::int64_t tuples = 1;
  for (int j = 0; j < k; ++j) tuples *= t.n();
  const auto count = kernels::omp::flip_count(t, k);
  return Rational(static_cast<std::int64_t>(count), tuples * static_cast<std::int64_t>(t.size()));
}

BoundValue lb_query_main(double rho, int n, double eps) {
  check_eps(eps);
  if (rho < 0.0 || n < 0) throw InputError("rho and n must be nonnegative");
  return clamp((1.0 - 2.0 * std::sqrt(eps)) / 2.0 * rho * n, eps >= 0.25);
}

BoundValue lb_query_general(const FourierSpectrum& spectrum, double eps, int k) {
  check_odd(k);
  check_eps(eps);
  const double root_eps = std::sqrt(eps);
  const double inner = (1.0 + 2.0 * root_eps) / 2.0 + (1.0 - 2.0 * root_eps) / 2.0 * noise_correlation(spectrum, k);
  // inner >= 2 sqrt(eps) >= 0 up to rounding; an odd root keeps the sign regardless.
  const double root = std::copysign(std::pow(std::abs(inner), 1.0 / k), inner);
  return clamp(0.5 * (1.0 - root) * spectrum.n(), eps >= 0.25);
}

BestGeneralBound lb_query_general_best(const FourierSpectrum& spectrum, double eps, int k_max) {
  if (k_max < 1) throw InputError("k_max must be >= 1");
  BestGeneralBound best;
  best.bound = lb_query_general(spectrum, eps, 1);
  for (int k = 1; k <= k_max; k += 2) {
    const BoundValue v = k == 1 ? best.bound : lb_query_general(spectrum, eps, k);
    best.scan.emplace_back(k, v.value);
    if (v.value > best.bound.value) {
      best.k = k;
      best.bound = v;
    }
  }
  return best;
}

double lb_query_bs(double bs) {
  if (bs < 0.0) throw InputError("block sensitivity must be nonnegative");
  return std::sqrt(bs) / 4.0;
}

double lb_query_deg(double degree) {
  if (degree < 0.0) throw InputError("degree must be nonnegative");
  return degree / 2.0;
}

double lb_deg_bs(double bs) {
  if (bs < 0.0) throw InputError("block sensitivity must be nonnegative");
  return std::sqrt(bs / 6.0);
}

double lb_deg_influence(double rho, int n, double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) throw InputError("approximation error must lie in [0, 1/2)");
  if (rho < 0.0 || n < 0) throw InputError("rho and n must be nonnegative");
  const double factor = 1.0 - 3.0 * eps / (1.0 + eps);
  return 0.25 * factor * factor * rho * n;
}

BoundValue e_lower_bound(const FourierSpectrum& spectrum, double eps, int k) {
  check_eps(eps);
  return clamp((2.0 - 4.0 * std::sqrt(eps)) * flip_prob_spectral(spectrum, k), eps >= 0.25);
}

double e_upper_bound(int queries, int n, int k, EUpperForm form) {
  check_odd(k);
  if (n < 1 || queries < 0 || queries > n) throw InputError("e_upper_bound needs 0 <= T <= n");
  const double lambda = static_cast<double>(queries) / n;
  const double base = form == EUpperForm::Derived ? 1.0 - 2.0 * lambda : 1.0 - lambda;
  return 2.0 - 2.0 * std::pow(base, k);
}

BoundReport bound_report(const FourierSpectrum& spectrum, double rho, double eps, std::optional<int> bs,
                         std::optional<int> approx_degree, int k_max) {
  BoundReport r;
  r.eps = eps;
  r.t_main = lb_query_main(rho, spectrum.n(), eps);
  r.t_general = lb_query_general_best(spectrum, eps, k_max);
  if (bs && eps <= 1.0 / 3.0) r.t_bs = lb_query_bs(*bs);
  if (approx_degree) r.t_deg = lb_query_deg(*approx_degree);
  if (eps < 0.5) r.d_influence = lb_deg_influence(rho, spectrum.n(), eps);
  if (bs) r.d_bs = lb_deg_bs(*bs);
  return r;
}

}  // namespace ilab

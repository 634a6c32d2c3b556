#pragma once

#include <optional>
#include <vector>

#include "ilab/core/rational.hpp"
#include "ilab/core/truth_table.hpp"
#include "ilab/fourier/spectrum.hpp"

namespace ilab {

/// A lower bound that may have been clamped at zero.
struct BoundValue {
  double value = 0.0;
  /// True when the raw formula was negative (clamped) or its hypotheses on eps do not hold.
  bool vacuous = false;
};

/// sum_s f^_s^2 (1 - 2|s|/n)^k.
double noise_correlation(const FourierSpectrum& spectrum, int k);

/// Pr_{x, i_1..i_k}[f(x) != f(x ^ e_{i_1} ^ ... ^ e_{i_k})] = 1/2 - 1/2 noise_correlation(k).
/// k must be odd and positive. At k = 1 this is the average influence.
double flip_prob_spectral(const FourierSpectrum& spectrum, int k);

/// The same probability by enumerating every x and every tuple in [n]^k. Exact.
/// Requires n^k 2^n <= 1e8.
Rational flip_prob_bruteforce(const TruthTable& t, int k);
inline constexpr double kBruteForceLimit = 1e8;

/// T >= (1 - 2 sqrt(eps))/2 * rho * n. Vacuous for eps >= 1/4.
BoundValue lb_query_main(double rho, int n, double eps);

/// T >= n/2 [1 - ((1 + 2 sqrt(eps))/2 + (1 - 2 sqrt(eps))/2 noise_correlation(k))^{1/k}], k odd.
BoundValue lb_query_general(const FourierSpectrum& spectrum, double eps, int k);

struct BestGeneralBound {
  int k = 1;
  BoundValue bound;
  /// (k, value) for every odd k scanned.
  std::vector<std::pair<int, double>> scan;
};
/// Scan odd k <= k_max; the maximizer with ties going to the smallest k.
BestGeneralBound lb_query_general_best(const FourierSpectrum& spectrum, double eps, int k_max = 15);

/// sqrt(BS)/4 queries at error 1/3.
double lb_query_bs(double bs);
/// deg/2 queries.
double lb_query_deg(double degree);
/// Approximate degree >= sqrt(BS/6).
double lb_deg_bs(double bs);
/// Approximate degree >= 1/4 (1 - 3 eps/(1 + eps))^2 rho n, for 0 <= eps < 1/2.
double lb_deg_influence(double rho, int n, double eps);

/// E >= (2 - 4 sqrt(eps)) * flip_prob_spectral(k), clamped at zero.
BoundValue e_lower_bound(const FourierSpectrum& spectrum, double eps, int k);

enum class EUpperForm {
  /// 2 - 2 (1 - 2T/n)^k, the form the derivation actually produces.
  Derived,
  /// 2 - 2 (1 - T/n)^k, as printed in the lemma statement; kept for comparison only.
  Printed,
};
double e_upper_bound(int queries, int n, int k, EUpperForm form = EUpperForm::Derived);

struct BoundReport {
  double eps = 0.0;
  BoundValue t_main;
  BestGeneralBound t_general;
  std::optional<double> t_bs;        // needs BS and eps <= 1/3
  std::optional<double> t_deg;       // needs the approximate degree
  std::optional<double> d_influence; // needs eps < 1/2
  std::optional<double> d_bs;        // needs BS
};

BoundReport bound_report(const FourierSpectrum& spectrum, double rho, double eps, std::optional<int> bs,
                         std::optional<int> approx_degree, int k_max = 15);

}  // namespace ilab

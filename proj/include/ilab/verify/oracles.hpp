#pragma once

// Brute-force reference computations. None of these share code with the fast paths they check.

#include <cstdint>
#include <vector>

#include "ilab/core/rational.hpp"
#include "ilab/core/truth_table.hpp"
#include "ilab/qsim/qsim.hpp"

namespace ilab::oracle {

/// sum_x f(x)(-1)^{s.x} for every s by direct O(4^n) summation.
std::vector<std::int64_t> direct_fourier_sums(const TruthTable& t);

/// Coefficients of f (0/1) in the monomial basis prod_{i in S} x_i, by Moebius inversion.
std::vector<std::int64_t> monomial_coefficients(const TruthTable& t);
int monomial_degree(const TruthTable& t);

/// Influence counts straight from the definition.
Rational influence_by_definition(const TruthTable& t, int i);

/// Block sensitivity over all sensitive blocks (not only minimal ones) with exhaustive packing.
/// Intended for n <= 6.
int naive_block_sensitivity(const TruthTable& t);
int naive_block_sensitivity_at(const TruthTable& t, std::uint32_t x);

/// The algorithm's final state on a fixed oracle, by plain state-vector evolution.
qsim::CVector direct_final_state(const qsim::Algorithm& alg, std::uint32_t x);

/// E_{x, i_1..i_k} ||phi(x) - phi(x ^ e_{i_1} ^ ... ^ e_{i_k})||^2 from per-oracle states.
double direct_e_statistic(const std::vector<qsim::CVector>& states, int n, int k);

/// Variables renamed by `perm`: result(x) = t(y) with y_{perm[i]} = x_i.
TruthTable permute_variables(const TruthTable& t, const std::vector<int>& perm);

}  // namespace ilab::oracle

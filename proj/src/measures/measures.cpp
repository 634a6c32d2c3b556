#include "ilab/measures/measures.hpp"

#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"

namespace ilab {

Rational influence(const TruthTable& t, int i) {
  if (i < 0 || i >= t.n()) {
    throw InputError("variable index " + std::to_string(i) + " out of range for n = " + std::to_string(t.n()));
  }
  return influences(t)[i];
}

std::vector<Rational> influences(const TruthTable& t) {
  const auto counts = kernels::omp::influence_counts(t);
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (auto c : counts) out.emplace_back(static_cast<std::int64_t>(c), static_cast<std::int64_t>(t.size()));
  return out;
}

Rational avg_influence(const TruthTable& t) {
  std::int64_t total = 0;
  for (auto c : kernels::omp::influence_counts(t)) total += static_cast<std::int64_t>(c);
  return Rational(total, static_cast<std::int64_t>(t.size()) * t.n());
}

Rational avg_sensitivity(const TruthTable& t) {
  const auto scan = kernels::omp::sensitivity_scan(t);
  return Rational(static_cast<std::int64_t>(scan.total), static_cast<std::int64_t>(t.size()));
}

int sensitivity_at(const TruthTable& t, std::uint32_t x) {
  const bool v = t.at(x);
  int s = 0;
  for (int i = 0; i < t.n(); ++i) s += v != t[x ^ (std::uint32_t{1} << i)];
  return s;
}

SensitivityResult max_sensitivity(const TruthTable& t) {
  const auto scan = kernels::omp::sensitivity_scan(t);
  return {scan.max, scan.argmax};
}

MeasureReport measure(const TruthTable& t, const MeasureOptions& options) {
  MeasureReport r;
  r.n = t.n();
  r.influences = influences(t);
  r.rho = avg_influence(t);
  r.avg_sensitivity = avg_sensitivity(t);
  r.max_sensitivity = max_sensitivity(t);
  if (options.compute_bs && t.n() <= kMaxExactBsVars) r.block_sensitivity = block_sensitivity(t, options.bs);
  return r;
}

}  // namespace ilab

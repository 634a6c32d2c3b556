#include "ilab/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ilab/bounds/bounds.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/core/table_io.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/kernels/kernels.hpp"
#include "ilab/measures/measures.hpp"
#include "ilab/qsim/qsim.hpp"
#include "ilab/verify/oracles.hpp"

namespace ilab::verify {
namespace {

constexpr double kFloatTolerance = 1e-12;

struct Case {
  TruthTable table;
  /// What the reference side sees. Equal to `table` unless a fault is injected.
  TruthTable reference;
};

TruthTable flip_first_bit(const TruthTable& t) {
  return TruthTable::from_function(t.n(), [&](std::uint32_t x) { return x == 0 ? !t[0] : t[x]; });
}

std::vector<Case> corpus(const Options& options, int n_lo, int n_hi) {
  std::vector<TruthTable> tables;
  std::uint64_t seed = options.seed;
  for (int n = n_lo; n <= n_hi; ++n) {
    tables.push_back(builtin("parity", n));
    tables.push_back(builtin("and", n));
    if (n % 2 == 1) tables.push_back(builtin("majority", n));
    for (int s = 0; s < options.samples; ++s) tables.push_back(random_table(n, seed++ * 0x9e3779b97f4a7c15ULL + n));
  }
  for (const auto& t : options.extra) {
    if (t.n() >= n_lo && t.n() <= n_hi) tables.push_back(t);
  }
  std::vector<Case> cases;
  cases.reserve(tables.size());
  for (auto& t : tables) {
    TruthTable ref = options.inject_fault ? flip_first_bit(t) : t;
    cases.push_back({std::move(t), std::move(ref)});
  }
  return cases;
}

std::string describe(const TruthTable& t) {
  return "n=" + std::to_string(t.n()) + " bits=" + encode_bits_hex(t);
}

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  CheckResult& check(const std::string& name) {
    for (auto& r : out_) {
      if (r.suite == suite_ && r.name == name) return r;
    }
    out_.push_back({suite_, name, 0, 0, {}});
    return out_.back();
  }

  void record(const std::string& name, bool ok, const std::function<std::string()>& detail) {
    auto& r = check(name);
    ++r.cases;
    if (ok) return;
    if (r.failures++ == 0) r.counterexample = detail();
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

std::vector<std::int64_t> transformed(std::vector<std::int64_t> v, bool parallel) {
  if (parallel) {
    kernels::omp::wht(v);
  } else {
    kernels::serial::wht(v);
  }
  return v;
}

void fourier_suite(const Options& options, std::vector<CheckResult>& out) {
  Recorder rec("fourier", out);
  for (const auto& c : corpus(options, 1, options.n_max)) {
    const auto spec = wht(c.table);
    const auto direct = oracle::direct_fourier_sums(c.reference);
    rec.record("wht_vs_direct_sums", std::equal(spec.sums().begin(), spec.sums().end(), direct.begin(), direct.end()),
               [&] { return describe(c.table); });
    rec.record("parseval", spec.parseval_sum() == Rational(1), [&] {
      return describe(c.table) + " sum=" + spec.parseval_sum().str();
    });
    rec.record("inverse_roundtrip", inverse_wht(spec) == c.reference, [&] { return describe(c.table); });
    const int deg = spectral_degree(spec);
    const int mono = oracle::monomial_degree(c.reference);
    rec.record("degree_vs_monomial", deg == mono, [&] {
      return describe(c.table) + " spectral=" + std::to_string(deg) + " monomial=" + std::to_string(mono);
    });
    const int comp = spectral_degree(wht(c.reference.complement()));
    rec.record("degree_complement_invariant", deg == comp, [&] {
      return describe(c.table) + " deg=" + std::to_string(deg) + " complement=" + std::to_string(comp);
    });
    rec.record("wht_serial_vs_omp",
               transformed(kernels::sign_vector(c.table), true) ==
                   transformed(kernels::sign_vector(c.reference), false),
               [&] { return describe(c.table); });
  }
}

void measures_suite(const Options& options, std::vector<CheckResult>& out) {
  Recorder rec("measures", out);
  std::mt19937_64 rng(options.seed);
  for (const auto& c : corpus(options, 1, options.n_max)) {
    const int n = c.table.n();
    const auto infl = influences(c.table);
    for (int i = 0; i < n; ++i) {
      const auto ref = oracle::influence_by_definition(c.reference, i);
      rec.record("influence_vs_definition", infl[i] == ref, [&] {
        return describe(c.table) + " i=" + std::to_string(i) + " got=" + infl[i].str() + " want=" + ref.str();
      });
    }
    const Rational rho = avg_influence(c.table);
    const Rational rho_spec = rho_from_spectrum(wht(c.reference));
    rec.record("rho_vs_spectrum", rho == rho_spec,
               [&] { return describe(c.table) + " got=" + rho.str() + " want=" + rho_spec.str(); });
    const Rational sbar = avg_sensitivity(c.table);
    rec.record("avg_sensitivity_eq_rho_n", sbar == rho_spec * Rational(n),
               [&] { return describe(c.table) + " sbar=" + sbar.str() + " rho=" + rho_spec.str(); });

    rec.record("influence_kernels_serial_vs_omp",
               kernels::omp::influence_counts(c.table) == kernels::serial::influence_counts(c.reference),
               [&] { return describe(c.table); });
    const auto a = kernels::omp::sensitivity_scan(c.table);
    const auto b = kernels::serial::sensitivity_scan(c.reference);
    rec.record("sensitivity_kernels_serial_vs_omp", a.total == b.total && a.max == b.max && a.argmax == b.argmax,
               [&] { return describe(c.table); });

    if (n <= 6) {
      const auto bs = block_sensitivity(c.table);
      const int naive = oracle::naive_block_sensitivity(c.reference);
      rec.record("bs_vs_naive", bs.value == naive, [&] {
        return describe(c.table) + " got=" + std::to_string(bs.value) + " want=" + std::to_string(naive);
      });
      const auto bs_serial = block_sensitivity(c.reference, {.budget = std::nullopt, .serial = true});
      rec.record("bs_serial_vs_omp", bs.value == bs_serial.value && bs.witness_input == bs_serial.witness_input,
                 [&] { return describe(c.table); });

      bool witness_ok = bs.witness_blocks.size() == static_cast<std::size_t>(bs.value);
      std::uint32_t used = 0;
      for (auto blk : bs.witness_blocks) {
        witness_ok = witness_ok && blk != 0 && (blk & used) == 0 &&
                     c.reference[bs.witness_input] != c.reference[bs.witness_input ^ blk];
        used |= blk;
      }
      rec.record("bs_witness_valid", witness_ok, [&] { return describe(c.table); });

      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto permuted = oracle::permute_variables(c.reference, perm);
      const int bs_perm = block_sensitivity(permuted).value;
      rec.record("bs_permutation_invariant", bs.value == bs_perm, [&] { return describe(c.table); });
      rec.record("bs_complement_invariant", bs.value == block_sensitivity(c.reference.complement()).value,
                 [&] { return describe(c.table); });
      rec.record("sbar_permutation_invariant", sbar == avg_sensitivity(permuted), [&] { return describe(c.table); });
    }
  }
}

void bounds_suite(const Options& options, std::vector<CheckResult>& out) {
  Recorder rec("bounds", out);
  for (const auto& c : corpus(options, 1, options.n_max)) {
    const int n = c.table.n();
    const auto spec = wht(c.table);
    for (int k : {1, 3, 5}) {
      if (std::pow(static_cast<double>(n), k) * static_cast<double>(c.table.size()) > kBruteForceLimit) continue;
      const double spectral = flip_prob_spectral(spec, k);
      const double brute = flip_prob_bruteforce(c.reference, k).to_double();
      rec.record("flip_prob_spectral_vs_bruteforce", std::abs(spectral - brute) <= kFloatTolerance, [&] {
        std::ostringstream os;
        os.precision(17);
        os << describe(c.table) << " k=" << k << " spectral=" << spectral << " brute=" << brute;
        return os.str();
      });
      rec.record("flip_count_serial_vs_omp",
                 kernels::omp::flip_count(c.table, k) == kernels::serial::flip_count(c.reference, k),
                 [&] { return describe(c.table) + " k=" + std::to_string(k); });
    }
    const double rho = rho_from_spectrum(wht(c.reference)).to_double();
    for (double eps : {0.0, 0.01, 0.1, 0.2}) {
      const auto general = lb_query_general(spec, eps, 1);
      const auto main = lb_query_main(rho, n, eps);
      rec.record("general_k1_eq_main", std::abs(general.value - main.value) <= kFloatTolerance, [&] {
        std::ostringstream os;
        os.precision(17);
        os << describe(c.table) << " eps=" << eps << " general=" << general.value << " main=" << main.value;
        return os.str();
      });
    }
  }
}

std::vector<qsim::Algorithm> algorithms_for(const TruthTable& t) {
  std::vector<qsim::Algorithm> algs;
  const int n = t.n();
  if (n <= qsim::kMaxSerialReadVars) algs.push_back(qsim::serial_read(t));
  if (n % 2 == 0) algs.push_back(qsim::deutsch_parity(n));
  if (n >= 2) algs.push_back(qsim::grover(n, 1));
  return algs;
}

void qsim_suite(const Options& options, std::vector<CheckResult>& out) {
  Recorder rec("qsim", out);
  const int n_hi = std::min(options.n_max, 4);
  for (const auto& c : corpus(options, 1, n_hi)) {
    const int n = c.table.n();
    for (const auto& alg : algorithms_for(c.table)) {
      const auto result = qsim::run(alg);
      std::vector<qsim::CVector> direct;
      double worst = 0.0;
      std::uint32_t worst_x = 0;
      for (std::uint32_t x = 0; x < c.table.size(); ++x) {
        // A fault on the reference side perturbs the oracle seen by the direct simulator at x = 0.
        const std::uint32_t oracle = (options.inject_fault && x == 0) ? 1u : x;
        direct.push_back(oracle::direct_final_state(alg, oracle));
        const double diff = (result.state.reconstruct(x) - direct.back()).cwiseAbs().maxCoeff();
        if (diff > worst) {
          worst = diff;
          worst_x = x;
        }
      }
      rec.record("fourier_vs_direct_state", worst <= qsim::kTolerance, [&] {
        std::ostringstream os;
        os << alg.name() << " n=" << n << " x=" << worst_x << " diff=" << worst;
        return os.str();
      });

      const auto profile = qsim::error_profile(alg, result.state, c.table);
      double profile_diff = 0.0;
      for (std::uint32_t x = 0; x < c.table.size(); ++x) {
        double p_accept = 0.0;
        for (int b = 0; b < alg.layout().dimension(); ++b) {
          if (alg.accept()[b]) p_accept += std::norm(direct[x](b));
        }
        const double want = c.reference[x] ? 1.0 - p_accept : p_accept;
        profile_diff = std::max(profile_diff, std::abs(profile.per_oracle[x] - want));
      }
      rec.record("error_profile_vs_direct", profile_diff <= qsim::kTolerance,
                 [&] { return alg.name() + " " + describe(c.table); });

      for (int k : {1, 3}) {
        const double e = qsim::e_statistic(result.state, k);
        const double ref = oracle::direct_e_statistic(direct, n, k);
        rec.record("e_statistic_vs_direct", std::abs(e - ref) <= qsim::kTolerance, [&] {
          std::ostringstream os;
          os.precision(17);
          os << alg.name() << " n=" << n << " k=" << k << " fourier=" << e << " direct=" << ref;
          return os.str();
        });
      }
    }
  }
}

}  // namespace

std::vector<CheckResult> run(const std::string& suite, const Options& options) {
  if (options.n_max < 1 || options.n_max > 10) throw InputError("--n-max must be in [1, 10]");
  if (options.samples < 0) throw InputError("--samples must be non-negative");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && suite != "fourier" && suite != "measures" && suite != "bounds" && suite != "qsim") {
    throw InputError("unknown suite '" + suite + "' (expected fourier, measures, bounds, qsim or all)");
  }
  if (all || suite == "fourier") fourier_suite(options, out);
  if (all || suite == "measures") measures_suite(options, out);
  if (all || suite == "bounds") bounds_suite(options, out);
  if (all || suite == "qsim") qsim_suite(options, out);
  return out;
}

}  // namespace ilab::verify

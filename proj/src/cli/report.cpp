#include "ilab/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ilab/approxdeg/approx_degree.hpp"
#include "ilab/bounds/bounds.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/core/rational.hpp"
#include "ilab/core/table_io.hpp"
#include "ilab/dsl/dsl.hpp"
#include "ilab/fourier/spectrum.hpp"
#include "ilab/measures/measures.hpp"
#include "ilab/qsim/qsim.hpp"

namespace ilab::report {
namespace {

constexpr int kTopCoefficients = 16;
constexpr int kInlineBitsVars = 12;

double clean(double v) { return v == 0.0 ? 0.0 : v; }

Json exact(const Rational& r) {
  Json j;
  j["exact"] = r.str();
  j["value"] = clean(r.to_double());
  return j;
}

Json bound_json(const BoundValue& b) {
  Json j;
  j["value"] = clean(b.value);
  j["vacuous"] = b.vacuous;
  return j;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(clean(*v)) : Json(nullptr); }

Json input_json(const FunctionSource& source) {
  Json j;
  j["kind"] = source.kind;
  j[source.kind == "expr" ? "expr" : "path"] = source.text;
  j["n"] = source.table.n();
  j["ones"] = source.table.count_ones();
  if (source.table.n() <= kInlineBitsVars) j["bits"] = encode_bits_hex(source.table);
  return j;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw InputError("bad number '" + std::string(s) + "' in eps");
  }
  return v;
}

class StageTimer {
 public:
  explicit StageTimer(bool enabled) : enabled_(enabled) {}

  template <typename F>
  auto stage(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    if (enabled_) {
      const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
      timings_[name] = d.count();
    }
    return result;
  }

  Json json() const { return enabled_ ? timings_ : Json(nullptr); }

 private:
  bool enabled_;
  Json timings_ = Json::object();
};

Json measures_json(const MeasureReport& m, bool bs_requested) {
  Json j;
  Json infl = Json::array();
  for (const auto& r : m.influences) infl.push_back(r.str());
  j["influences"] = std::move(infl);
  j["rho"] = exact(m.rho);
  j["avg_sensitivity"] = exact(m.avg_sensitivity);
  j["max_sensitivity"] = {{"value", m.max_sensitivity.value}, {"witness", m.max_sensitivity.witness}};
  if (m.block_sensitivity) {
    const auto& bs = *m.block_sensitivity;
    j["block_sensitivity"] = {{"value", bs.value},
                              {"exact", bs.exact},
                              {"witness_input", bs.witness_input},
                              {"witness_blocks", bs.witness_blocks}};
    j["block_sensitivity_skipped"] = nullptr;
  } else {
    j["block_sensitivity"] = nullptr;
    j["block_sensitivity_skipped"] = bs_requested ? "n > 16" : "disabled";
  }
  return j;
}

Json spectrum_json(const FourierSpectrum& spec, bool dump) {
  Json j;
  j["degree"] = spectral_degree(spec);
  j["parseval"] = spec.parseval_sum().str();
  Json weights = Json::array();
  const auto dist = spec.weight_distribution();
  const std::int64_t denom = spec.denominator();
  for (std::size_t w = 0; w < dist.size(); ++w) {
    // W[w] / 4^n, reduced in two steps so the denominator never exceeds 2^40.
    weights.push_back(exact(Rational(dist[w], denom) / Rational(denom)));
  }
  j["weight_distribution"] = std::move(weights);

  std::vector<std::uint32_t> nonzero;
  for (std::uint32_t s = 0; s < spec.size(); ++s) {
    if (spec.sum(s) != 0) nonzero.push_back(s);
  }
  j["nonzero"] = nonzero.size();
  auto top = nonzero;
  std::stable_sort(top.begin(), top.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::llabs(spec.sum(a)) > std::llabs(spec.sum(b));
  });
  if (top.size() > static_cast<std::size_t>(kTopCoefficients)) top.resize(kTopCoefficients);
  Json top_json = Json::array();
  for (auto s : top) top_json.push_back({{"s", s}, {"coeff", spec.coeff(s).str()}});
  j["top"] = std::move(top_json);
  if (dump) {
    Json all = Json::array();
    for (auto s : nonzero) {
      const Rational c = spec.coeff(s);
      all.push_back({{"s", s}, {"coeff_num", c.num()}, {"coeff_den", c.den()}});
    }
    j["coefficients"] = std::move(all);
  }
  return j;
}

Json bounds_json(const BoundReport& b) {
  Json j;
  j["eps"] = clean(b.eps);
  j["t_main"] = bound_json(b.t_main);
  Json scan = Json::array();
  for (const auto& [k, v] : b.t_general.scan) scan.push_back({{"k", k}, {"value", clean(v)}});
  j["t_general"] = {{"k", b.t_general.k},
                    {"value", clean(b.t_general.bound.value)},
                    {"vacuous", b.t_general.bound.vacuous},
                    {"scan", std::move(scan)}};
  j["t_bs"] = optional_number(b.t_bs);
  j["t_deg"] = optional_number(b.t_deg);
  j["d_influence"] = optional_number(b.d_influence);
  j["d_bs"] = optional_number(b.d_bs);
  return j;
}

Json scan_json(const ApproxDegreeResult& r) {
  Json scan = Json::array();
  for (const auto& fit : r.scan) {
    scan.push_back({{"d", fit.degree},
                    {"t_star", clean(fit.t_star)},
                    {"max_error", clean(fit.max_error)},
                    {"iterations", fit.iterations}});
  }
  return scan;
}

std::string fmt(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_object() && v.contains("exact")) return v["exact"].get<std::string>();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

FunctionSource from_expression(std::string_view expr) {
  return {"expr", std::string(expr), dsl::elaborate(expr)};
}

FunctionSource from_table_file(const std::string& path) { return {"table", path, read_table(path)}; }

double parse_eps(std::string_view text) {
  double value = 0.0;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash));
    const auto den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw InputError("eps denominator must be positive");
    value = static_cast<double>(num) / static_cast<double>(den);
  } else {
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
      throw InputError("bad eps '" + std::string(text) + "'");
    }
  }
  if (!(value >= 0.0 && value <= 0.5)) throw InputError("eps must lie in [0, 1/2]");
  return value;
}

Json analyze(const FunctionSource& source, const AnalyzeOptions& options) {
  const double eps = parse_eps(options.eps_text);
  if (options.k_max < 1) throw InputError("--kmax must be at least 1");
  const TruthTable& t = source.table;
  StageTimer timer(options.timing);

  MeasureOptions mopts;
  mopts.compute_bs = options.compute_bs;
  if (options.bs_budget_ms) mopts.bs.budget = std::chrono::milliseconds(*options.bs_budget_ms);
  const auto measures = timer.stage("measures", [&] { return measure(t, mopts); });
  const auto spec = timer.stage("spectrum", [&] { return wht(t); });
  const Rational rho = rho_from_spectrum(spec);
  if (!(rho == measures.rho)) throw ConsistencyError("average influence disagrees with the spectrum");

  std::optional<ApproxDegreeResult> approx;
  if (options.approx) approx = timer.stage("approx_degree", [&] { return approx_degree_scan(t, eps); });

  std::optional<int> bs;
  if (measures.block_sensitivity && measures.block_sensitivity->exact) bs = measures.block_sensitivity->value;
  std::optional<int> adeg = approx ? approx->degree : std::nullopt;
  const auto bounds = timer.stage("bounds", [&] { return bound_report(spec, rho.to_double(), eps, bs, adeg, options.k_max); });

  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = input_json(source);
  j["measures"] = measures_json(measures, options.compute_bs);
  j["spectrum"] = spectrum_json(spec, options.dump_spectrum);
  j["bounds"] = bounds_json(bounds);
  j["bounds"]["eps_text"] = options.eps_text;
  if (approx) {
    j["approx_degree"] = {{"eps", clean(eps)},
                          {"degree", approx->degree ? Json(*approx->degree) : Json(nullptr)},
                          {"scan", scan_json(*approx)}};
  } else {
    j["approx_degree"] = nullptr;
  }
  j["timing_ms"] = timer.json();
  return j;
}

std::string analyze_text(const Json& r) {
  std::ostringstream os;
  const auto& in = r["input"];
  const auto& m = r["measures"];
  const auto& b = r["bounds"];
  os << "function     " << (in.contains("expr") ? in["expr"] : in["path"]).get<std::string>() << "  (n = "
     << in["n"].get<int>() << ")\n";
  os << "rho          " << fmt(m["rho"]) << "\n";
  os << "avg sens     " << fmt(m["avg_sensitivity"]) << "\n";
  os << "max sens     " << m["max_sensitivity"]["value"].get<int>() << " at x = " << m["max_sensitivity"]["witness"]
     << "\n";
  if (m["block_sensitivity"].is_null()) {
    os << "block sens   skipped (" << m["block_sensitivity_skipped"].get<std::string>() << ")\n";
  } else {
    os << "block sens   " << m["block_sensitivity"]["value"].get<int>()
       << (m["block_sensitivity"]["exact"].get<bool>() ? "" : " (lower bound, budget hit)") << "\n";
  }
  os << "degree       " << r["spectrum"]["degree"].get<int>() << "\n";
  os << "bounds at eps = " << b["eps_text"].get<std::string>() << "\n";
  os << "  T_main     " << fmt(b["t_main"]["value"]) << (b["t_main"]["vacuous"].get<bool>() ? " (vacuous)" : "")
     << "\n";
  os << "  T_general  " << fmt(b["t_general"]["value"]) << " (k = " << b["t_general"]["k"].get<int>() << ")\n";
  os << "  T_bs       " << fmt(b["t_bs"]) << "\n";
  os << "  T_deg      " << fmt(b["t_deg"]) << "\n";
  os << "  deg_infl   " << fmt(b["d_influence"]) << "\n";
  os << "  deg_bs     " << fmt(b["d_bs"]) << "\n";
  if (!r["approx_degree"].is_null()) os << "approx deg   " << fmt(r["approx_degree"]["degree"]) << "\n";
  return os.str();
}

Json approx_degree(const FunctionSource& source, const ApproxOptions& options) {
  const double eps = parse_eps(options.eps_text);
  const auto result = approx_degree_scan(source.table, eps, options.max_degree);
  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = input_json(source);
  j["eps"] = clean(eps);
  j["eps_text"] = options.eps_text;
  j["degree"] = result.degree ? Json(*result.degree) : Json(nullptr);
  j["exact_degree"] = exact_degree(source.table);
  j["scan"] = scan_json(result);
  if (const auto* best = result.best()) {
    const auto& fit = *best;
    Json terms = Json::array();
    for (const auto& [s, c] : fit.poly.terms()) terms.push_back({{"s", s}, {"c", clean(c)}});
    j["polynomial"] = {{"degree_bound", fit.poly.degree_bound()},
                       {"max_error", clean(fit.max_error)},
                       {"terms", std::move(terms)}};
  } else {
    j["polynomial"] = nullptr;
  }
  return j;
}

Json simulate(const SimulateOptions& options) {
  TruthTable t(1);
  std::optional<qsim::Algorithm> alg;
  if (options.algorithm == "serial") {
    if (!options.source) throw InputError("serial needs --expr or --table");
    t = options.source->table;
    if (options.n != 0 && options.n != t.n()) throw InputError("--n does not match the function's variable count");
    if (t.n() > qsim::kMaxSerialReadVars) {
      throw CapacityError("serial_read supports at most " + std::to_string(qsim::kMaxSerialReadVars) + " variables");
    }
    alg = qsim::serial_read(t);
  } else if (options.algorithm == "parity") {
    t = builtin("parity", options.n);
    alg = qsim::deutsch_parity(options.n);
  } else if (options.algorithm == "grover") {
    t = builtin("or", options.n);
    alg = qsim::grover(options.n, options.iterations);
  } else {
    throw InputError("unknown algorithm '" + options.algorithm + "' (expected serial, parity or grover)");
  }
  const int n = t.n();

  const auto result = qsim::run(*alg);
  const auto profile = qsim::error_profile(*alg, result.state, t);
  const double eps = profile.worst;
  const int queries = alg->queries();
  const auto spec = wht(t);
  const double rho = rho_from_spectrum(spec).to_double();

  Json j;
  j["schema"] = kSchemaVersion;
  j["algorithm"] = alg->name();
  j["n"] = n;
  if (options.algorithm == "grover") j["iterations"] = options.iterations;
  if (options.source) j["input"] = input_json(*options.source);
  j["dimension"] = alg->layout().dimension();
  j["queries"] = queries;
  Json errors = Json::array();
  for (double e : profile.per_oracle) errors.push_back(clean(e));
  j["per_oracle_error"] = std::move(errors);
  j["worst_error"] = clean(eps);
  j["support_history"] = result.support_history;
  j["max_support_weight"] = result.state.max_weight();

  if (options.algorithm == "grover") {
    double success = 1.0;
    for (int i = 0; i < n; ++i) success = std::min(success, 1.0 - profile.per_oracle[std::uint32_t{1} << i]);
    j["single_marked_success"] = clean(success);
  }

  // The lower bounds need eps < 1; an algorithm that is always wrong on some oracle gets none.
  const bool bounded = eps < 1.0;
  Json es = Json::array();
  for (int k : options.ks) {
    if (k < 1 || k % 2 == 0) throw InputError("--k values must be odd and positive");
    const double e = qsim::e_statistic(result.state, k);
    const double upper = e_upper_bound(queries, n, k);
    Json entry = {{"k", k}, {"value", clean(e)}, {"lower", nullptr}, {"upper", clean(upper)}};
    bool holds = e <= upper + 1e-9;
    if (bounded) {
      const auto lower = e_lower_bound(spec, eps, k);
      entry["lower"] = clean(lower.value);
      holds = holds && lower.value - 1e-9 <= e;
    }
    entry["holds"] = holds;
    es.push_back(std::move(entry));
  }
  j["e_statistics"] = std::move(es);

  const auto mode = n <= qsim::kMaxAllPairsVars ? qsim::GapMode::AllPairs : qsim::GapMode::Neighbors;
  const auto gap = qsim::gap_check(result.state, t, eps, mode);
  j["gap"] = {{"mode", mode == qsim::GapMode::AllPairs ? "all_pairs" : "neighbors"},
              {"threshold", clean(gap.threshold)},
              {"min_distance_sq", gap.min_distance_sq ? Json(clean(*gap.min_distance_sq)) : Json(nullptr)},
              {"pairs", gap.pairs},
              {"violations", gap.violations}};

  if (bounded) {
    const auto t_main = lb_query_main(rho, n, eps);
    const auto t_general = lb_query_general_best(spec, eps);
    j["bounds"] = {{"rho", clean(rho)},
                   {"t_main", bound_json(t_main)},
                   {"t_general", {{"k", t_general.k}, {"value", clean(t_general.bound.value)}}},
                   {"holds", queries >= t_main.value - 1e-9 && queries >= t_general.bound.value - 1e-9},
                   {"tight", !t_main.vacuous && std::abs(queries - t_main.value) <= 1e-9}};
  } else {
    j["bounds"] = {{"rho", clean(rho)}, {"t_main", nullptr}, {"t_general", nullptr}, {"holds", true}, {"tight", false}};
  }
  return j;
}

}  // namespace ilab::report

// influence_lab: analyze / approx-degree / simulate / verify.

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "ilab/cli/report.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/core/table_io.hpp"
#include "ilab/kernels/kernels.hpp"
#include "ilab/verify/suites.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCapacity = 3, kInternal = 4 };

struct SourceFlags {
  std::string expr;
  std::string table;

  void attach(CLI::App* app) {
    auto* e = app->add_option("--expr", expr, "Function expression, e.g. \"maj(x0,x1,x2)\"");
    auto* t = app->add_option("--table", table, "Truth-table JSON file");
    e->excludes(t);
    t->excludes(e);
  }

  std::optional<ilab::report::FunctionSource> load() const {
    if (!expr.empty()) return ilab::report::from_expression(expr);
    if (!table.empty()) return ilab::report::from_table_file(table);
    return std::nullopt;
  }

  ilab::report::FunctionSource require() const {
    auto s = load();
    if (!s) throw ilab::InputError("exactly one of --expr or --table is required");
    return *s;
  }
};

void print_json(const ilab::report::Json& j) { std::cout << j.dump(2) << "\n"; }

int run_verify(const std::string& suite, const ilab::verify::Options& options) {
  const auto results = ilab::verify::run(suite, options);
  bool ok = true;
  std::cout << std::left << std::setw(10) << "suite" << std::setw(36) << "check" << std::right << std::setw(8)
            << "cases" << std::setw(10) << "failures" << "  status\n";
  for (const auto& r : results) {
    std::cout << std::left << std::setw(10) << r.suite << std::setw(36) << r.name << std::right << std::setw(8)
              << r.cases << std::setw(10) << r.failures << "  " << (r.passed() ? "PASS" : "FAIL") << "\n";
    ok = ok && r.passed();
  }
  for (const auto& r : results) {
    if (!r.passed()) std::cout << "counterexample " << r.suite << "/" << r.name << ": " << r.counterexample << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence, sensitivity and query-complexity bounds for Boolean functions"};
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "Worker cap (0 = auto); overrides INFLUENCE_LAB_THREADS");

  auto* analyze = app.add_subcommand("analyze", "Measures, spectrum and query lower bounds");
  SourceFlags analyze_src;
  ilab::report::AnalyzeOptions aopts;
  std::string format = "json";
  long bs_budget = -1;
  analyze_src.attach(analyze);
  analyze->add_option("--eps", aopts.eps_text, "Error probability, decimal or a/b")->capture_default_str();
  analyze->add_option("--kmax", aopts.k_max, "Largest odd k in the general bound scan")->capture_default_str();
  analyze->add_flag("--no-bs", [&](std::int64_t) { aopts.compute_bs = false; }, "Skip block sensitivity");
  analyze->add_option("--bs-budget-ms", bs_budget, "Time limit for block sensitivity");
  analyze->add_flag("--approx", aopts.approx, "Also compute the approximate degree at eps");
  analyze->add_flag("--dump-spectrum", aopts.dump_spectrum, "List every nonzero Fourier coefficient");
  analyze->add_flag("--timing", aopts.timing, "Report per-stage wall time (breaks byte-identical output)");
  analyze->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* approx = app.add_subcommand("approx-degree", "Approximate degree by linear programming");
  SourceFlags approx_src;
  ilab::report::ApproxOptions popts;
  int max_degree = -1;
  approx_src.attach(approx);
  approx->add_option("--eps", popts.eps_text, "Error, decimal or a/b")->capture_default_str();
  approx->add_option("--max-degree", max_degree, "Stop the scan after this degree");

  auto* simulate = app.add_subcommand("simulate", "Run a builtin query algorithm in the Fourier picture");
  SourceFlags sim_src;
  ilab::report::SimulateOptions sopts;
  sim_src.attach(simulate);
  simulate->add_option("--algorithm", sopts.algorithm, "serial, parity or grover")
      ->required()
      ->check(CLI::IsMember({"serial", "parity", "grover"}));
  simulate->add_option("--n", sopts.n, "Number of input bits");
  simulate->add_option("--iterations", sopts.iterations, "Grover iterations")->capture_default_str();
  simulate->add_option("--k", sopts.ks, "Odd k values for the E statistic")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Cross-check fast paths against brute-force references");
  SourceFlags verify_src;
  std::string suite = "all";
  ilab::verify::Options vopts;
  verify_src.attach(verify);
  verify->add_option("--suite", suite, "fourier, measures, bounds, qsim or all")->capture_default_str();
  verify->add_option("--n-max", vopts.n_max, "Largest n in the random corpus")->capture_default_str();
  verify->add_option("--seed", vopts.seed, "Corpus seed")->capture_default_str();
  verify->add_option("--samples", vopts.samples, "Random functions per n")->capture_default_str();
  verify->add_flag("--inject-fault", vopts.inject_fault, "Corrupt the reference side to exercise failure reporting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (threads >= 0) {
      ilab::kernels::set_thread_limit(threads);
    } else {
      ilab::kernels::configure_threads_from_env();
    }

    if (*analyze) {
      if (bs_budget >= 0) aopts.bs_budget_ms = bs_budget;
      const auto report = ilab::report::analyze(analyze_src.require(), aopts);
      if (format == "text") {
        std::cout << ilab::report::analyze_text(report);
      } else {
        print_json(report);
      }
    } else if (*approx) {
      if (max_degree >= 0) popts.max_degree = max_degree;
      print_json(ilab::report::approx_degree(approx_src.require(), popts));
    } else if (*simulate) {
      sopts.source = sim_src.load();
      print_json(ilab::report::simulate(sopts));
    } else if (*verify) {
      if (auto s = verify_src.load()) vopts.extra.push_back(s->table);
      return run_verify(suite, vopts);
    }
  } catch (const ilab::ParseError& e) {
    // the message already carries line, column and offset
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ilab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kUsage;
  } catch (const ilab::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const ilab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

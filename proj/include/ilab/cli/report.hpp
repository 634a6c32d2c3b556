#pragma once

// JSON reports behind the influence_lab subcommands. Everything here is deterministic: keys keep
// insertion order, arrays are sorted, and wall-clock timings appear only when asked for.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilab/core/truth_table.hpp"

namespace ilab::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct FunctionSource {
  /// "expr" or "table".
  std::string kind;
  /// The expression text or the table path as given.
  std::string text;
  TruthTable table{1};
};

FunctionSource from_expression(std::string_view expr);
FunctionSource from_table_file(const std::string& path);

/// "0.25", "1/3", "0". Must lie in [0, 1/2]. Throws InputError otherwise.
double parse_eps(std::string_view text);

struct AnalyzeOptions {
  std::string eps_text = "1/3";
  int k_max = 15;
  bool compute_bs = true;
  std::optional<long> bs_budget_ms;
  bool approx = false;
  bool dump_spectrum = false;
  bool timing = false;
};

Json analyze(const FunctionSource& source, const AnalyzeOptions& options);
/// Human-oriented rendering of an analyze report.
std::string analyze_text(const Json& report);

struct ApproxOptions {
  std::string eps_text = "1/3";
  std::optional<int> max_degree;
};

Json approx_degree(const FunctionSource& source, const ApproxOptions& options);

struct SimulateOptions {
  /// "serial", "parity" or "grover".
  std::string algorithm;
  int n = 0;
  int iterations = 1;
  /// Function read by the serial algorithm.
  std::optional<FunctionSource> source;
  std::vector<int> ks{1, 3};
};

Json simulate(const SimulateOptions& options);

}  // namespace ilab::report

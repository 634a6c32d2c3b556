#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>

#include "ilab/bounds/bounds.hpp"
#include "ilab/cli/report.hpp"
#include "ilab/core/errors.hpp"
#include "ilab/core/table_io.hpp"
#include "ilab/dsl/dsl.hpp"
#include "ilab/fourier/spectrum.hpp"

using namespace ilab;
using namespace ilab::report;

namespace {

Json analyze_expr(const std::string& expr, AnalyzeOptions o = {}) { return analyze(from_expression(expr), o); }

AnalyzeOptions at_eps(const std::string& eps) {
  AnalyzeOptions o;
  o.eps_text = eps;
  return o;
}

}  // namespace

TEST(ParseEps, AcceptsDecimalsAndFractions) {
  EXPECT_DOUBLE_EQ(parse_eps("0"), 0.0);
  EXPECT_DOUBLE_EQ(parse_eps("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_eps("1/3"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(parse_eps("1/2"), 0.5);
  for (const char* bad : {"", "abc", "-0.1", "0.6", "1/0", "2/3", "1/", "0.1x", "nan"}) {
    EXPECT_THROW(parse_eps(bad), InputError) << bad;
  }
}

TEST(Analyze, ParityAtZeroError) {
  const auto r = analyze_expr("parity(8)", at_eps("0"));
  EXPECT_EQ(r["schema"], kSchemaVersion);
  EXPECT_EQ(r["input"]["n"], 8);
  EXPECT_EQ(r["measures"]["rho"]["exact"], "1");
  EXPECT_EQ(r["measures"]["avg_sensitivity"]["exact"], "8");
  EXPECT_EQ(r["measures"]["block_sensitivity"]["value"], 8);
  EXPECT_DOUBLE_EQ(r["bounds"]["t_main"]["value"].get<double>(), 4.0);
  EXPECT_FALSE(r["bounds"]["t_main"]["vacuous"].get<bool>());
  for (const auto& row : r["bounds"]["t_general"]["scan"]) EXPECT_NEAR(row["value"].get<double>(), 4.0, 1e-12);
  EXPECT_EQ(r["spectrum"]["degree"], 8);
  EXPECT_TRUE(r["approx_degree"].is_null());
  EXPECT_TRUE(r["timing_ms"].is_null());
}

TEST(Analyze, ConstantZeroIsAllZero) {
  const auto r = analyze_expr("0");
  EXPECT_EQ(r["measures"]["rho"]["exact"], "0");
  EXPECT_EQ(r["measures"]["avg_sensitivity"]["exact"], "0");
  EXPECT_EQ(r["measures"]["max_sensitivity"]["value"], 0);
  EXPECT_EQ(r["measures"]["block_sensitivity"]["value"], 0);
  for (const char* key : {"t_bs", "d_influence", "d_bs"}) EXPECT_EQ(r["bounds"][key].get<double>(), 0.0) << key;
  EXPECT_EQ(r["bounds"]["t_main"]["value"].get<double>(), 0.0);
  EXPECT_EQ(r["bounds"]["t_general"]["value"].get<double>(), 0.0);
}

TEST(Analyze, IteratedFamily) {
  const auto f1 = analyze_expr("paper_f");
  EXPECT_EQ(f1["measures"]["avg_sensitivity"]["exact"], "5/2");
  EXPECT_EQ(f1["measures"]["block_sensitivity"]["value"], 3);
  AnalyzeOptions no_bs;
  no_bs.compute_bs = false;
  const auto f2 = analyze_expr("iterate(paper_f,2)", no_bs);
  EXPECT_EQ(f2["measures"]["avg_sensitivity"]["exact"], "25/4");
  EXPECT_TRUE(f2["measures"]["block_sensitivity"].is_null());
  EXPECT_EQ(f2["measures"]["block_sensitivity_skipped"], "disabled");
}

TEST(Analyze, BlockSensitivitySkippedAboveSixteen) {
  const auto r = analyze_expr("parity(17)");
  EXPECT_TRUE(r["measures"]["block_sensitivity"].is_null());
  EXPECT_EQ(r["measures"]["block_sensitivity_skipped"], "n > 16");
  EXPECT_TRUE(r["bounds"]["t_bs"].is_null());
}

TEST(Analyze, BoundsReproducibleFromReportedMeasures) {
  for (const char* expr : {"maj(x0,x1,x2)", "x0 & (x1 | x2) ^ x3", "paper_f", "or(5)"}) {
    for (const char* eps : {"0", "0.01", "1/3"}) {
      const auto r = analyze_expr(expr, at_eps(eps));
      const int n = r["input"]["n"];
      const double rho = r["measures"]["rho"]["value"];
      const double sbar = r["measures"]["avg_sensitivity"]["value"];
      EXPECT_NEAR(sbar, rho * n, 1e-12) << expr;
      const double e = r["bounds"]["eps"];
      EXPECT_DOUBLE_EQ(r["bounds"]["t_main"]["value"].get<double>(), lb_query_main(rho, n, e).value);
      const int bs = r["measures"]["block_sensitivity"]["value"];
      EXPECT_DOUBLE_EQ(r["bounds"]["t_bs"].get<double>(), lb_query_bs(bs));
      EXPECT_DOUBLE_EQ(r["bounds"]["d_bs"].get<double>(), lb_deg_bs(bs));
      EXPECT_DOUBLE_EQ(r["bounds"]["d_influence"].get<double>(), lb_deg_influence(rho, n, e));
      const auto best = lb_query_general_best(wht(dsl::elaborate(expr)), e, 15);
      EXPECT_EQ(r["bounds"]["t_general"]["k"], best.k);
      EXPECT_DOUBLE_EQ(r["bounds"]["t_general"]["value"].get<double>(), best.bound.value);
    }
  }
}

TEST(Analyze, ApproxSpectrumAndTimingSections) {
  AnalyzeOptions o;
  o.approx = true;
  o.dump_spectrum = true;
  o.timing = true;
  const auto r = analyze_expr("maj(x0,x1,x2)", o);
  ASSERT_TRUE(r["approx_degree"].is_object());
  EXPECT_EQ(r["approx_degree"]["degree"], 1);
  ASSERT_TRUE(r["timing_ms"].is_object());
  EXPECT_TRUE(r["timing_ms"].contains("measures"));
  const auto& coeffs = r["spectrum"]["coefficients"];
  ASSERT_EQ(coeffs.size(), 4u);
  EXPECT_EQ(coeffs[3]["s"], 7);
  EXPECT_EQ(coeffs[3]["coeff_num"], -1);
  EXPECT_EQ(coeffs[3]["coeff_den"], 2);
}

TEST(Analyze, DeterministicBytes) {
  AnalyzeOptions o;
  o.approx = true;
  o.dump_spectrum = true;
  const auto a = analyze_expr("x0 & x1 | x2 & !x3 ^ x4", o).dump(2);
  const auto b = analyze_expr("x0 & x1 | x2 & !x3 ^ x4", o).dump(2);
  EXPECT_EQ(a, b);
}

TEST(Analyze, TextRenderingMentionsKeyQuantities) {
  const auto text = analyze_text(analyze_expr("maj(x0,x1,x2)"));
  for (const char* needle : {"rho", "3/2", "block sens", "T_main"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

TEST(Sources, TableFileRoundTripAndErrors) {
  const auto t = dsl::elaborate("maj(x0,x1,x2)");
  const auto path = std::filesystem::temp_directory_path() / "ilab_report_table.json";
  write_table(t, path);
  const auto src = from_table_file(path.string());
  EXPECT_EQ(src.kind, "table");
  EXPECT_EQ(src.table, t);
  std::filesystem::remove(path);
  EXPECT_THROW(from_table_file(path.string()), InputError);
  EXPECT_THROW(from_expression("x0 ^^ x1"), ParseError);
}

TEST(ApproxReport, SpecExamples) {
  ApproxOptions o;
  const auto parity = approx_degree(from_expression("parity(4)"), o);
  EXPECT_EQ(parity["degree"], 4);
  const auto orr = approx_degree(from_expression("or(2)"), o);
  EXPECT_EQ(orr["degree"], 1);
  EXPECT_EQ(orr["exact_degree"], 2);
  o.eps_text = "0";
  for (const char* expr : {"maj(x0,x1,x2)", "x0 & x1 ^ x2", "or(3)"}) {
    const auto r = approx_degree(from_expression(expr), o);
    EXPECT_EQ(r["degree"], r["exact_degree"]) << expr;
  }
}

TEST(ApproxReport, ExportedPolynomialMeetsItsReportedError) {
  const auto t = dsl::elaborate("x0 & (x1 | x2)");
  const auto r = approx_degree(from_expression("x0 & (x1 | x2)"), {});
  const double max_error = r["polynomial"]["max_error"];
  double worst = 0.0;
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    double p = 0.0;
    for (const auto& term : r["polynomial"]["terms"]) {
      const std::uint32_t s = term["s"];
      p += ((std::popcount(s & x) & 1) ? -1.0 : 1.0) * term["c"].get<double>();
    }
    worst = std::max(worst, std::abs(p - (t[x] ? 1.0 : 0.0)));
  }
  EXPECT_NEAR(worst, max_error, 1e-9);
  EXPECT_LE(max_error, 1.0 / 3.0 + 1e-9);
  EXPECT_THROW(approx_degree(from_expression("x0"), ApproxOptions{"0.7", std::nullopt}), InputError);
}

TEST(SimulateReport, SpecExamples) {
  SimulateOptions parity;
  parity.algorithm = "parity";
  parity.n = 4;
  const auto p = simulate(parity);
  EXPECT_EQ(p["queries"], 2);
  EXPECT_EQ(p["worst_error"].get<double>(), 0.0);
  EXPECT_TRUE(p["bounds"]["tight"].get<bool>());
  EXPECT_EQ(p["gap"]["violations"], 0);

  SimulateOptions serial;
  serial.algorithm = "serial";
  serial.n = 3;
  serial.source = from_expression("maj(x0,x1,x2)");
  const auto s = simulate(serial);
  EXPECT_EQ(s["queries"], 3);
  EXPECT_EQ(s["worst_error"].get<double>(), 0.0);
  for (const auto& row : s["e_statistics"]) EXPECT_TRUE(row["holds"].get<bool>());

  SimulateOptions grover;
  grover.algorithm = "grover";
  grover.n = 4;
  const auto g = simulate(grover);
  EXPECT_NEAR(g["single_marked_success"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(g["bounds"]["t_main"].is_null());
}

TEST(SimulateReport, RejectsBadRequests) {
  SimulateOptions o;
  o.algorithm = "shor";
  o.n = 4;
  EXPECT_THROW(simulate(o), InputError);
  o.algorithm = "serial";
  EXPECT_THROW(simulate(o), InputError);  // no function given
  o.source = from_expression("parity(7)");
  o.n = 7;
  EXPECT_THROW(simulate(o), CapacityError);
  o.algorithm = "parity";
  o.n = 3;
  o.source.reset();
  EXPECT_THROW(simulate(o), InputError);
}

#include <gtest/gtest.h>

#include "ilab/core/errors.hpp"
#include "ilab/dsl/dsl.hpp"
#include "ilab/verify/suites.hpp"

using namespace ilab;

namespace {

verify::Options small() {
  verify::Options o;
  o.n_max = 4;
  o.samples = 3;
  o.seed = 7;
  return o;
}

}  // namespace

TEST(VerifySuites, EverySuitePassesOnACleanCorpus) {
  for (const char* suite : {"fourier", "measures", "bounds", "qsim"}) {
    const auto results = verify::run(suite, small());
    ASSERT_FALSE(results.empty()) << suite;
    for (const auto& r : results) {
      EXPECT_EQ(r.suite, suite);
      EXPECT_GT(r.cases, 0u) << r.name;
      EXPECT_TRUE(r.passed()) << r.suite << "/" << r.name << ": " << r.counterexample;
      EXPECT_TRUE(r.counterexample.empty());
    }
  }
}

TEST(VerifySuites, AllIsTheUnionOfTheSuites) {
  std::size_t parts = 0;
  for (const char* suite : {"fourier", "measures", "bounds", "qsim"}) parts += verify::run(suite, small()).size();
  EXPECT_EQ(verify::run("all", small()).size(), parts);
}

TEST(VerifySuites, ExtraFunctionsAreChecked) {
  auto with = small();
  with.extra.push_back(dsl::elaborate("maj(x0,x1,x2) ^ x3"));
  const auto base = verify::run("fourier", small());
  const auto more = verify::run("fourier", with);
  ASSERT_EQ(base.size(), more.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_GT(more[i].cases, base[i].cases) << base[i].name;
    EXPECT_TRUE(more[i].passed());
  }
}

TEST(VerifySuites, InjectedFaultIsCaughtWithCounterexample) {
  auto o = small();
  o.inject_fault = true;
  for (const char* suite : {"fourier", "measures", "bounds", "qsim"}) {
    const auto results = verify::run(suite, o);
    int failed = 0;
    for (const auto& r : results) {
      if (!r.passed()) {
        ++failed;
        EXPECT_FALSE(r.counterexample.empty()) << r.name;
      }
    }
    EXPECT_GT(failed, 0) << suite;
  }
}

TEST(VerifySuites, DeterministicForAFixedSeed) {
  const auto a = verify::run("all", small());
  const auto b = verify::run("all", small());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].cases, b[i].cases);
  }
}

TEST(VerifySuites, RejectsBadOptions) {
  EXPECT_THROW(verify::run("spectra", small()), InputError);
  auto o = small();
  o.n_max = 0;
  EXPECT_THROW(verify::run("all", o), InputError);
  o.n_max = 11;
  EXPECT_THROW(verify::run("all", o), InputError);
  o = small();
  o.samples = -1;
  EXPECT_THROW(verify::run("all", o), InputError);
}

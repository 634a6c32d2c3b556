#include <gtest/gtest.h>

#include <random>

#include "ilab/core/errors.hpp"
#include "ilab/dsl/dsl.hpp"

using namespace ilab;
using dsl::NodeKind;

TEST(Parse, XorOfVariables) {
  const auto ast = dsl::parse("x0 ^ x1");
  ASSERT_EQ(ast.kind, NodeKind::Xor);
  ASSERT_EQ(ast.children.size(), 2u);
  EXPECT_EQ(ast.children[0].kind, NodeKind::Var);
  EXPECT_EQ(ast.children[0].value, 0);
  EXPECT_EQ(ast.children[1].value, 1);
}

TEST(Parse, Precedence) {
  const auto ast = dsl::parse("!(x0 & x1) | x2");
  ASSERT_EQ(ast.kind, NodeKind::Or);
  EXPECT_EQ(ast.children[0].kind, NodeKind::Not);
  EXPECT_EQ(ast.children[0].children[0].kind, NodeKind::And);
  EXPECT_EQ(ast.children[1].kind, NodeKind::Var);
  EXPECT_EQ(dsl::print(dsl::parse("x0 | x1 ^ x2 & !x3")), "(x0 | (x1 ^ (x2 & !x3)))");
}

TEST(Parse, ErrorOffsets) {
  try {
    dsl::parse("x0 ^^ x1");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(dsl::parse(""), ParseError);
  EXPECT_THROW(dsl::parse("(x0 & x1"), ParseError);
  EXPECT_THROW(dsl::parse("x0 x1"), ParseError);
  EXPECT_THROW(dsl::parse("foo(x0)"), ParseError);
  try {
    dsl::parse("x0 &\n  | x1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
  try {
    dsl::parse("x0 &\nx1 )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(Parse, PrintRoundTrip) {
  for (const char* text : {"x0 ^ x1", "!(x0 & x1) | x2", "maj(x0, x1, x2)", "iterate(paper_f, 2)",
                           "compose(parity(2), and(2))", "!!x3 & (x1 | 0) ^ 1", "paper_f"}) {
    const auto ast = dsl::parse(text);
    EXPECT_TRUE(dsl::parse(dsl::print(ast)).same_shape(ast)) << text;
  }
}

TEST(Parse, PrintRoundTripRandomTrees) {
  std::mt19937_64 rng(9);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    const int pick = depth == 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 6);
    switch (pick) {
      case 0: return "x" + std::to_string(rng() % 5);
      case 1: return std::to_string(rng() % 2);
      case 2: return "!" + gen(depth - 1);
      case 3: return "(" + gen(depth - 1) + " & " + gen(depth - 1) + ")";
      case 4: return gen(depth - 1) + " ^ " + gen(depth - 1);
      default: return gen(depth - 1) + " | " + gen(depth - 1);
    }
  };
  for (int i = 0; i < 200; ++i) {
    const auto text = gen(4);
    const auto ast = dsl::parse(text);
    EXPECT_TRUE(dsl::parse(dsl::print(ast)).same_shape(ast)) << text;
  }
}

TEST(Elaborate, Basics) {
  EXPECT_EQ(dsl::elaborate("x0 ^ x1"), builtin("parity", 2));
  EXPECT_EQ(dsl::elaborate("paper_f"), iterated_base_function());
  EXPECT_EQ(dsl::elaborate("paper_f(x0, x1, x2, x3)"), iterated_base_function());
  EXPECT_EQ(dsl::elaborate("iterate(paper_f, 2)"), iterate(iterated_base_function(), 2));
  EXPECT_EQ(dsl::elaborate("parity(8)"), builtin("parity", 8));
  EXPECT_EQ(dsl::elaborate("maj(x0,x1,x2)"), builtin("majority", 3));
  EXPECT_EQ(dsl::elaborate("and(x0, x1) | or(x2, x3)"),
            TruthTable::from_function(4, [](std::uint32_t x) { return (x & 3) == 3 || (x & 12) != 0; }));
  EXPECT_EQ(dsl::elaborate("compose(parity(2), parity(2))"), builtin("parity", 4));
}

TEST(Elaborate, Constants) {
  const auto zero = dsl::elaborate("0");
  EXPECT_EQ(zero.n(), 1);
  EXPECT_EQ(zero.count_ones(), 0u);
  EXPECT_EQ(dsl::elaborate("!0").count_ones(), 2u);
  EXPECT_EQ(dsl::elaborate("x0 & 0 | x1"), TruthTable::from_function(2, [](std::uint32_t x) { return x & 2; }));
}

TEST(Elaborate, Errors) {
  EXPECT_THROW(dsl::elaborate("x0 ^ x2"), InputError);     // gap at x1
  EXPECT_THROW(dsl::elaborate("maj(x0, x1)"), InputError);  // even arity
  EXPECT_THROW(dsl::elaborate("x0 & 2"), InputError);
  EXPECT_THROW(dsl::elaborate("x25"), CapacityError);
  EXPECT_THROW(dsl::elaborate("iterate(paper_f, 3)"), CapacityError);
  EXPECT_THROW(dsl::elaborate("iterate(paper_f)"), InputError);
}

TEST(Elaborate, MintermRenderingReproducesTable) {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto t = random_table(n, seed * 31 + n);
      EXPECT_EQ(dsl::elaborate(dsl::render_minterms(t)), t) << "n=" << n << " seed=" << seed;
    }
  }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ilab/core/truth_table.hpp"

namespace ilab::dsl {

// Grammar, lowest precedence first:
//   expr  := or
//   or    := xor ("|" xor)*
//   xor   := and ("^" and)*
//   and   := unary ("&" unary)*
//   unary := "!" unary | atom
//   atom  := integer | var | name [ "(" args ")" ] | "(" expr ")"
//   var   := "x" integer
//   name  := maj | parity | and | or | compose | iterate | paper_f
//
// Integer literals other than 0 and 1 are only meaningful as call arguments (arity, iteration count).

enum class NodeKind { Var, Const, Not, And, Or, Xor, Call };

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Node {
  NodeKind kind = NodeKind::Const;
  /// Var: variable index. Const: literal value.
  std::int64_t value = 0;
  /// Call: builtin name.
  std::string name;
  /// Call: true when written with a parenthesized argument list.
  bool has_args = false;
  std::vector<Node> children;
  Span span;

  /// Structural equality; spans are ignored.
  bool same_shape(const Node& other) const;
};

/// Parses `text`; throws ParseError with the offending offset and the expected tokens.
Node parse(std::string_view text);

/// Canonical text form: binary operators fully parenthesized, no extra whitespace variation.
std::string print(const Node& node);

/// Evaluates the expression at every assignment of x0..x_{n-1}.
///
/// A family call with one integer argument (`parity(8)`) is the family on that many variables;
/// with expression arguments (`maj(x0, x1, x2)`) it is applied to them. `compose(outer, inner)`
/// and `iterate(f, k)` delegate to the table operations. Bare `paper_f` is the 4-variable base
/// function. The referenced variables must be exactly {x0..x_{n-1}}; a constant-only expression
/// is a function of one variable.
TruthTable elaborate(const Node& node);
TruthTable elaborate(std::string_view text);

/// An expression equal to `t` built as an XOR of minterms; every variable is referenced.
std::string render_minterms(const TruthTable& t);

}  // namespace ilab::dsl

#include <algorithm>
#include <bit>
#include <functional>

#include "ilab/core/errors.hpp"
#include "ilab/dsl/dsl.hpp"

namespace ilab::dsl {

namespace {

/// A function of its first n variables (n may be 0 for constants) plus the set of variables
/// the source expression mentions.
struct Value {
  int n = 0;
  std::vector<std::uint64_t> words{0};
  std::uint32_t used = 0;

  bool bit(std::uint32_t x) const { return (words[x >> 6] >> (x & 63)) & 1u; }
};

std::size_t words_for(int n) { return n >= 6 ? (std::size_t{1} << (n - 6)) : 1; }

/// Same function viewed on n >= v.n variables.
Value lift(const Value& v, int n) {
  if (v.n == n) return v;
  Value out;
  out.n = n;
  out.used = v.used;
  std::uint64_t pattern = v.words[0];
  if (v.n < 6) {
    const unsigned period = 1u << v.n;
    pattern &= period == 64 ? ~0ull : ((1ull << period) - 1);
    for (unsigned filled = period; filled < 64; filled *= 2) pattern |= pattern << filled;
  }
  out.words.resize(words_for(n));
  for (std::size_t j = 0; j < out.words.size(); ++j) {
    out.words[j] = v.n < 6 ? pattern : v.words[j % v.words.size()];
  }
  if (n < 6) out.words[0] &= valid_mask(n);
  return out;
}

Value from_table(const TruthTable& t) {
  Value v;
  v.n = t.n();
  v.words.assign(t.words().begin(), t.words().end());
  v.used = (std::uint32_t{1} << t.n()) - 1;
  return v;
}

TruthTable to_table(const Value& v) {
  if (v.n == 0) return TruthTable::from_function(1, [&](std::uint32_t) { return v.bit(0); });
  return TruthTable::from_words(v.n, v.words);
}

bool is_family(const std::string& name) {
  return name == "maj" || name == "parity" || name == "and" || name == "or" || name == "paper_f";
}

int integer_arg(const Node& node, const std::string& what, int lo, int hi) {
  if (node.kind != NodeKind::Const || node.value < lo || node.value > hi) {
    throw InputError(what + " must be an integer literal in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(node.value);
}

Value eval(const Node& node);

Value combine(const std::vector<Value>& args, const std::function<bool(const std::vector<bool>&)>& op) {
  int n = 0;
  std::uint32_t used = 0;
  for (const auto& a : args) {
    n = std::max(n, a.n);
    used |= a.used;
  }
  std::vector<Value> lifted;
  for (const auto& a : args) lifted.push_back(lift(a, n));
  Value out;
  out.n = n;
  out.used = used;
  out.words.assign(words_for(n), 0);
  std::vector<bool> bits(args.size());
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    for (std::size_t k = 0; k < lifted.size(); ++k) bits[k] = lifted[k].bit(x);
    if (op(bits)) out.words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return out;
}

Value eval_call(const Node& node) {
  const std::string& name = node.name;
  if (name == "compose") {
    if (node.children.size() != 2) throw InputError("compose takes exactly two arguments");
    return from_table(compose(to_table(eval(node.children[0])), to_table(eval(node.children[1]))));
  }
  if (name == "iterate") {
    if (node.children.size() != 2) throw InputError("iterate takes exactly two arguments");
    const int k = integer_arg(node.children[1], "iterate count", 1, kMaxVars);
    return from_table(iterate(to_table(eval(node.children[0])), k));
  }
  if (!is_family(name)) throw InputError("unknown builtin '" + name + "'");

  if (name == "paper_f" && (!node.has_args || node.children.empty())) return from_table(builtin("paper_f", 4));
  if (!node.has_args) throw InputError("'" + name + "' needs an argument list");
  if (node.children.size() == 1 && node.children[0].kind == NodeKind::Const && name != "paper_f") {
    const int n = integer_arg(node.children[0], name + " arity", 1, kMaxVars);
    return from_table(builtin(name, n));
  }

  std::vector<Value> args;
  for (const auto& child : node.children) args.push_back(eval(child));
  const std::size_t m = args.size();
  if (name == "paper_f") {
    if (m != 4) throw InputError("paper_f takes four arguments");
    const TruthTable base = builtin("paper_f", 4);
    return combine(args, [&](const std::vector<bool>& b) {
      return base[static_cast<std::uint32_t>(b[0] | b[1] << 1 | b[2] << 2 | b[3] << 3)];
    });
  }
  if (name == "maj" && m % 2 == 0) throw InputError("maj needs an odd number of arguments");
  return combine(args, [&](const std::vector<bool>& b) {
    const auto ones = static_cast<std::size_t>(std::count(b.begin(), b.end(), true));
    if (name == "and") return ones == m;
    if (name == "or") return ones > 0;
    if (name == "parity") return (ones & 1) != 0;
    return 2 * ones > m;
  });
}

Value eval(const Node& node) {
  switch (node.kind) {
    case NodeKind::Var: {
      if (node.value < 0 || node.value >= kMaxVars) {
        throw CapacityError("variable x" + std::to_string(node.value) + " exceeds the " + std::to_string(kMaxVars) +
                            "-variable limit");
      }
      const int i = static_cast<int>(node.value);
      Value v = from_table(TruthTable::from_function(i + 1, [i](std::uint32_t x) { return (x >> i) & 1u; }));
      v.used = std::uint32_t{1} << i;
      return v;
    }
    case NodeKind::Const: {
      if (node.value != 0 && node.value != 1) {
        throw InputError("integer " + std::to_string(node.value) + " is not a Boolean constant");
      }
      Value v;
      v.words[0] = static_cast<std::uint64_t>(node.value);
      return v;
    }
    case NodeKind::Not: {
      Value v = eval(node.children[0]);
      for (auto& w : v.words) w = ~w;
      v.words.back() &= v.n == 0 ? 1u : valid_mask(v.n);
      return v;
    }
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      Value a = eval(node.children[0]);
      Value b = eval(node.children[1]);
      const int n = std::max(a.n, b.n);
      a = lift(a, n);
      b = lift(b, n);
      for (std::size_t j = 0; j < a.words.size(); ++j) {
        if (node.kind == NodeKind::And) a.words[j] &= b.words[j];
        if (node.kind == NodeKind::Or) a.words[j] |= b.words[j];
        if (node.kind == NodeKind::Xor) a.words[j] ^= b.words[j];
      }
      a.used |= b.used;
      return a;
    }
    case NodeKind::Call:
      return eval_call(node);
  }
  throw InputError("malformed expression tree");
}

}  // namespace

TruthTable elaborate(const Node& node) {
  const Value v = eval(node);
  const std::uint32_t all = v.n == 0 ? 0 : (std::uint32_t{1} << v.n) - 1;
  if (v.used != all) {
    const int missing = std::countr_zero(~v.used & all);
    throw InputError("variable gap: x" + std::to_string(missing) + " is not referenced but x" +
                     std::to_string(v.n - 1) + " is");
  }
  return to_table(v);
}

TruthTable elaborate(std::string_view text) { return elaborate(parse(text)); }

std::string render_minterms(const TruthTable& t) {
  const int n = t.n();
  // An always-false term mentioning every variable keeps the variable count fixed.
  std::string out = "(x0 & !x0";
  for (int i = 1; i < n; ++i) out += " & x" + std::to_string(i);
  out += ")";
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    if (!t[x]) continue;
    out += " ^ (";
    for (int i = 0; i < n; ++i) out += std::string(i ? " & " : "") + (((x >> i) & 1u) ? "" : "!") + "x" + std::to_string(i);
    out += ")";
  }
  return out;
}

}  // namespace ilab::dsl

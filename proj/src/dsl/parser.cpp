#include <cctype>
#include <charconv>

#include "ilab/core/errors.hpp"
#include "ilab/dsl/dsl.hpp"

namespace ilab::dsl {

namespace {

const std::vector<std::string> kNames = {"maj", "parity", "and", "or", "compose", "iterate", "paper_f"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Node parse_all() {
    Node node = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return node;
  }

 private:
  Node parse_or() { return parse_binary(NodeKind::Or, '|', &Parser::parse_xor); }
  Node parse_xor() { return parse_binary(NodeKind::Xor, '^', &Parser::parse_and); }
  Node parse_and() { return parse_binary(NodeKind::And, '&', &Parser::parse_unary); }

  Node parse_binary(NodeKind kind, char op, Node (Parser::*next)()) {
    Node lhs = (this->*next)();
    while (true) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != op) return lhs;
      require_operand(op);
      Node rhs = (this->*next)();
      Node node;
      node.kind = kind;
      node.span = {lhs.span.begin, rhs.span.end};
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
  }

  Node parse_unary() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!') {
      const std::size_t begin = pos_;
      require_operand('!');
      Node operand = parse_unary();
      Node node;
      node.kind = NodeKind::Not;
      node.span = {begin, operand.span.end};
      node.children.push_back(std::move(operand));
      return node;
    }
    return parse_atom();
  }

  Node parse_atom() {
    skip_space();
    const std::size_t begin = pos_;
    if (pos_ >= text_.size()) fail(atom_tokens());
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Node inner = parse_or();
      expect(')');
      inner.span = {begin, pos_};
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Node node;
      node.kind = NodeKind::Const;
      node.value = read_integer();
      node.span = {begin, pos_};
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      if (word.size() > 1 && word[0] == 'x' &&
          word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
        ++pos_;
        Node node;
        node.kind = NodeKind::Var;
        node.value = read_integer();
        node.span = {begin, pos_};
        return node;
      }
      bool known = false;
      for (const auto& n : kNames) known = known || word == n;
      if (!known) fail(atom_tokens(), "unknown name '" + std::string(word) + "'");
      pos_ = end;
      Node node;
      node.kind = NodeKind::Call;
      node.name = std::string(word);
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        node.has_args = true;
        node.children.push_back(parse_or());
        while (true) {
          skip_space();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            node.children.push_back(parse_or());
            continue;
          }
          expect(')', {"','", "')'"});
          break;
        }
      }
      node.span = {begin, node.has_args ? pos_ : end};
      return node;
    }
    fail(atom_tokens());
  }

  // Consumes the operator at pos_; a missing operand is reported at the operator itself.
  void require_operand(char op) {
    const std::size_t at = pos_++;
    std::size_t next = pos_;
    while (next < text_.size() && std::isspace(static_cast<unsigned char>(text_[next]))) ++next;
    const bool starts_atom = next < text_.size() && (text_[next] == '!' || text_[next] == '(' || text_[next] == '_' ||
                                                     std::isalnum(static_cast<unsigned char>(text_[next])));
    if (!starts_atom) {
      pos_ = at;
      fail(atom_tokens(), std::string("operator '") + op + "' is missing its operand");
    }
  }

  std::int64_t read_integer() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc() || pos_ == begin) {
      pos_ = begin;
      fail({"integer"}, "integer literal out of range");
    }
    return value;
  }

  void expect(char c, std::vector<std::string> expected = {}) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return;
    }
    if (expected.empty()) expected = {std::string("'") + c + "'"};
    fail(std::move(expected));
  }

  static std::vector<std::string> atom_tokens() { return {"'!'", "'('", "0", "1", "variable", "builtin name"}; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what = "") {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                          " (offset " + std::to_string(pos_) + ")";
    message += what.empty() ? (pos_ < text_.size() ? ": unexpected '" + std::string(1, text_[pos_]) + "'"
                                                    : ": unexpected end of input")
                            : ": " + what;
    message += "; expected one of:";
    for (std::size_t i = 0; i < expected.size(); ++i) message += (i ? ", " : " ") + expected[i];
    throw ParseError(message, pos_, line, column, std::move(expected));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool Node::same_shape(const Node& other) const {
  if (kind != other.kind || value != other.value || name != other.name || has_args != other.has_args ||
      children.size() != other.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!children[i].same_shape(other.children[i])) return false;
  }
  return true;
}

Node parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Node& node) {
  switch (node.kind) {
    case NodeKind::Var:
      return "x" + std::to_string(node.value);
    case NodeKind::Const:
      return std::to_string(node.value);
    case NodeKind::Not:
      return "!" + print(node.children[0]);
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      const char* op = node.kind == NodeKind::And ? " & " : node.kind == NodeKind::Or ? " | " : " ^ ";
      return "(" + print(node.children[0]) + op + print(node.children[1]) + ")";
    }
    case NodeKind::Call: {
      if (!node.has_args) return node.name;
      std::string out = node.name + "(";
      for (std::size_t i = 0; i < node.children.size(); ++i) out += (i ? ", " : "") + print(node.children[i]);
      return out + ")";
    }
  }
  return {};
}

}  // namespace ilab::dsl

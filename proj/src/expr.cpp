#include "topspin/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "topspin/errors.hpp"

namespace topspin {

int ExprAst::push(Node node) {
  nodes_.push_back(std::move(node));
  return root();
}

int ExprAst::constant(double value) { return push({Op::Constant, value, {}, -1, -1}); }
int ExprAst::variable() { return push({Op::Variable, 0.0, {}, -1, -1}); }
int ExprAst::parameter(std::string name) { return push({Op::Parameter, 0.0, std::move(name), -1, -1}); }

int ExprAst::unary(Op op, int operand) {
  if (operand < 0 || operand > root()) throw std::out_of_range("ExprAst: bad operand index");
  return push({op, 0.0, {}, operand, -1});
}

int ExprAst::binary(Op op, int lhs, int rhs) {
  if (lhs < 0 || rhs < 0 || lhs > root() || rhs > root())
    throw std::out_of_range("ExprAst: bad operand index");
  return push({op, 0.0, {}, lhs, rhs});
}

std::vector<std::string> ExprAst::parameters() const {
  std::vector<std::string> names;
  for (const auto& n : nodes_)
    if (n.op == Op::Parameter) names.push_back(n.name);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

namespace {

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void print(const ExprAst& ast, int index, std::string& out) {
  using Op = ExprAst::Op;
  const auto& n = ast.node(index);
  switch (n.op) {
    case Op::Constant:
      if (n.value < 0.0 || std::signbit(n.value)) {
        out += "(-" + format_number(-n.value) + ")";
      } else {
        out += format_number(n.value);
      }
      return;
    case Op::Variable: out += 's'; return;
    case Op::Parameter: out += n.name; return;
    case Op::Negate:
      out += "(-";
      print(ast, n.lhs, out);
      out += ')';
      return;
    case Op::Sqrt:
      out += "sqrt(";
      print(ast, n.lhs, out);
      out += ')';
      return;
    default: break;
  }
  char sym = '+';
  switch (n.op) {
    case Op::Sub: sym = '-'; break;
    case Op::Mul: sym = '*'; break;
    case Op::Div: sym = '/'; break;
    case Op::Pow: sym = '^'; break;
    default: break;
  }
  out += '(';
  print(ast, n.lhs, out);
  out += sym;
  print(ast, n.rhs, out);
  out += ')';
}

Jet2 power(Jet2 base, Jet2 exponent) {
  if (exponent.is_constant()) {
    const double p = exponent.v;
    if (base.v < 0.0 && p != std::floor(p))
      throw EvaluationError("negative base raised to a non-integer power");
    if (base.v == 0.0 && p < 0.0) throw EvaluationError("zero raised to a negative power");
    return pow(base, p);
  }
  if (base.v <= 0.0) throw EvaluationError("non-positive base raised to an s-dependent power");
  return exp(exponent * log(base));
}

}  // namespace

std::string ExprAst::to_string() const {
  std::string out;
  if (!empty()) print(*this, root(), out);
  return out;
}

Jet2 ExprAst::evaluate(Jet2 s, const std::map<std::string, double>& bindings) const {
  if (empty()) throw EvaluationError("empty expression");
  // Children precede parents, so one forward pass evaluates the tree.
  std::vector<Jet2> values(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const auto lhs = [&] { return values[static_cast<std::size_t>(n.lhs)]; };
    const auto rhs = [&] { return values[static_cast<std::size_t>(n.rhs)]; };
    switch (n.op) {
      case Op::Constant: values[i] = Jet2::constant(n.value); break;
      case Op::Variable: values[i] = s; break;
      case Op::Parameter: {
        auto it = bindings.find(n.name);
        if (it == bindings.end()) throw EvaluationError("unbound parameter '" + n.name + "'");
        values[i] = Jet2::constant(it->second);
        break;
      }
      case Op::Negate: values[i] = -lhs(); break;
      case Op::Add: values[i] = lhs() + rhs(); break;
      case Op::Sub: values[i] = lhs() - rhs(); break;
      case Op::Mul: values[i] = lhs() * rhs(); break;
      case Op::Div:
        if (rhs().v == 0.0) throw EvaluationError("division by zero");
        values[i] = lhs() / rhs();
        break;
      case Op::Pow: values[i] = power(lhs(), rhs()); break;
      case Op::Sqrt:
        if (lhs().v < 0.0) throw EvaluationError("sqrt of negative argument");
        values[i] = sqrt(lhs());
        break;
    }
  }
  return values.back();
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> params) : src_(src), params_(params) {}

  ExprAst run() {
    expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return std::move(ast_);
  }

 private:
  using Op = ExprAst::Op;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  int expr() {
    int lhs = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      int rhs = term();
      lhs = ast_.binary(c == '+' ? Op::Add : Op::Sub, lhs, rhs);
    }
    return lhs;
  }

  int term() {
    int lhs = factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      int rhs = factor();
      lhs = ast_.binary(c == '*' ? Op::Mul : Op::Div, lhs, rhs);
    }
    return lhs;
  }

  int factor() {
    if (peek() == '-') {
      ++pos_;
      return ast_.unary(Op::Negate, factor());
    }
    int base = atom();
    if (peek() == '^') {
      ++pos_;
      int exponent = factor();
      return ast_.binary(Op::Pow, base, exponent);
    }
    return base;
  }

  int atom() {
    const char c = peek();
    if (c == '\0') fail("expected operand but input ended");
    if (c == '(') {
      ++pos_;
      int inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail("malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("number out of range");
    }
    return ast_.constant(value);
  }

  int identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "s") return ast_.variable();
    if (name == "sqrt") {
      expect('(');
      int inner = expr();
      expect(')');
      return ast_.unary(Op::Sqrt, inner);
    }
    if (std::find(params_.begin(), params_.end(), name) == params_.end())
      throw UnknownIdentifier(name, start);
    return ast_.parameter(name);
  }

  std::string_view src_;
  std::span<const std::string> params_;
  std::size_t pos_ = 0;
  ExprAst ast_;
};

}  // namespace

ExprAst parse_expression(std::string_view source, std::span<const std::string> parameters) {
  return Parser(source, parameters).run();
}

}  // namespace topspin

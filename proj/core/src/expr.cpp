#include "calcverify/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>

#include "calcverify/cordic.hpp"

namespace calcverify {

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 7> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"tan", Function::tan},
    {"exp", Function::exp},
    {"ln", Function::ln},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

ExprPtr make_node(std::size_t offset, auto kind) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(kind), offset});
}

class Parser {
 public:
  Parser(std::string_view input, const std::vector<std::string>& variables) : in_(input), vars_(variables) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < in_.size()) {
      const char c = in_[pos_];
      if (c == ')') throw ParseError(pos_, "unbalanced ')'", "operator or end of input");
      if (is_ident_start(c) || is_digit(c) || c == '(' || c == '.') {
        throw ParseError(pos_, "implicit multiplication is not supported; insert '*'", "operator or end of input");
      }
      throw ParseError(pos_, std::string("unexpected '") + c + "'", "operator or end of input");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < in_.size() && (in_[pos_] == ' ' || in_[pos_] == '\t' || in_[pos_] == '\n' || in_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < in_.size() ? in_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      const std::size_t at = pos_++;
      ExprPtr rhs = parse_term();
      lhs = make_node(at, BinaryNode{c == '+' ? BinaryOp::add : BinaryOp::sub, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      const std::size_t at = pos_++;
      ExprPtr rhs = parse_factor();
      lhs = make_node(at, BinaryNode{c == '*' ? BinaryOp::mul : BinaryOp::div, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (peek() == '-') {
      const std::size_t at = pos_++;
      return make_node(at, NegateNode{parse_factor()});
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (peek() == '^') {
      const std::size_t at = pos_++;
      ExprPtr exponent = parse_factor();
      return make_node(at, BinaryNode{BinaryOp::pow, std::move(base), std::move(exponent)});
    }
    return base;
  }

  ExprPtr parse_atom() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '\0') throw ParseError(start, "unexpected end of input", "expression");
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      if (peek() != ')') throw ParseError(pos_, "unbalanced parenthesis: missing ')'", "')'");
      ++pos_;
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_name();
    throw ParseError(start, std::string("unexpected '") + c + "'", "expression");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    std::size_t mantissa_digits = 0;
    while (p < in_.size() && is_digit(in_[p])) ++p, ++mantissa_digits;
    if (p < in_.size() && in_[p] == '.') {
      ++p;
      while (p < in_.size() && is_digit(in_[p])) ++p, ++mantissa_digits;
    }
    if (mantissa_digits == 0) throw ParseError(start, "malformed number", "digit");
    if (p < in_.size() && (in_[p] == 'e' || in_[p] == 'E')) {
      ++p;
      if (p < in_.size() && (in_[p] == '+' || in_[p] == '-')) ++p;
      std::size_t exp_digits = 0;
      while (p < in_.size() && is_digit(in_[p])) ++p, ++exp_digits;
      if (exp_digits == 0) throw ParseError(start, "malformed number: exponent has no digits", "digit");
    }

    double value = 0.0;
    const auto [end, ec] = std::from_chars(in_.data() + start, in_.data() + p, value);
    if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
      throw ParseError(start, "malformed number: out of double range", "finite number");
    }
    if (ec != std::errc() || end != in_.data() + p) throw ParseError(start, "malformed number", "digit");
    pos_ = p;
    return make_node(start, NumberNode{value});
  }

  ExprPtr parse_name() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    while (p < in_.size() && is_ident_char(in_[p])) ++p;
    const std::string_view name = in_.substr(start, p - start);
    pos_ = p;

    const bool call = peek() == '(';
    if (call) {
      if (const auto fn = lookup_function(name)) {
        ++pos_;
        ExprPtr arg = parse_expr();
        if (peek() != ')') throw ParseError(pos_, "unbalanced parenthesis: missing ')'", "')'");
        ++pos_;
        return make_node(start, CallNode{*fn, std::move(arg)});
      }
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return make_node(start, VariableNode{i});
    }
    if (call) {
      throw ParseError(start, "unknown function '" + std::string(name) + "'",
                       "one of sin, cos, tan, exp, ln, sqrt, abs");
    }
    std::string declared;
    for (const auto& v : vars_) declared += (declared.empty() ? "" : ", ") + v;
    throw ParseError(start, "unknown variable '" + std::string(name) + "'", "a declared variable (" + declared + ")");
  }

  std::string_view in_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

class Evaluator {
 public:
  Evaluator(std::span<const double> values, const EvalOptions& options) : values_(values), options_(options) {}

  double eval(const ExprNode& node) const {
    const double v = std::visit([&](const auto& k) { return eval_kind(k, node.offset); }, node.kind);
    if (!std::isfinite(v)) throw EvalError(node.offset, "result is not finite (overflow)");
    return v;
  }

 private:
  double eval_kind(const NumberNode& n, std::size_t) const { return n.value; }
  double eval_kind(const VariableNode& v, std::size_t) const { return values_[v.index]; }
  double eval_kind(const NegateNode& n, std::size_t) const { return -eval(*n.operand); }

  double eval_kind(const BinaryNode& b, std::size_t at) const {
    const double l = eval(*b.lhs);
    const double r = eval(*b.rhs);
    switch (b.op) {
      case BinaryOp::add:
        return l + r;
      case BinaryOp::sub:
        return l - r;
      case BinaryOp::mul:
        return l * r;
      case BinaryOp::div:
        if (r == 0.0) throw EvalError(at, "division by zero");
        return l / r;
      case BinaryOp::pow:
        if (l == 0.0 && r < 0.0) throw EvalError(at, "zero raised to a negative power");
        if (l < 0.0 && r != std::trunc(r)) throw EvalError(at, "negative base raised to a non-integer power");
        return std::pow(l, r);
    }
    return 0.0;
  }

  double eval_kind(const CallNode& c, std::size_t at) const {
    const double x = eval(*c.arg);
    switch (c.fn) {
      case Function::sin:
        return trig(x, at).sin;
      case Function::cos:
        return trig(x, at).cos;
      case Function::tan: {
        if (options_.trig == TrigBackend::reference) return std::tan(x);
        const SinCos sc = trig(x, at);
        if (sc.cos == 0.0) throw EvalError(at, "tan is undefined where cos is zero");
        return sc.sin / sc.cos;
      }
      case Function::exp:
        return std::exp(x);
      case Function::ln:
        if (!(x > 0.0)) throw EvalError(at, "ln of a non-positive number");
        return std::log(x);
      case Function::sqrt:
        if (x < 0.0) throw EvalError(at, "sqrt of a negative number");
        return std::sqrt(x);
      case Function::abs:
        return std::abs(x);
    }
    return 0.0;
  }

  SinCos trig(double x, std::size_t at) const {
    if (options_.trig == TrigBackend::reference) return {std::sin(x), std::cos(x)};
    try {
      return options_.cordic ? cordic_sincos(x, *options_.cordic) : cordic_sincos(x);
    } catch (const DomainError& e) {
      throw EvalError(at, e.what());
    }
  }

  std::span<const double> values_;
  const EvalOptions& options_;
};

// Binding strength used by the printer; higher binds tighter.
int precedence(const ExprNode& n) {
  if (const auto* b = std::get_if<BinaryNode>(&n.kind)) {
    switch (b->op) {
      case BinaryOp::add:
      case BinaryOp::sub:
        return 1;
      case BinaryOp::mul:
      case BinaryOp::div:
        return 2;
      case BinaryOp::pow:
        return 4;
    }
  }
  if (std::holds_alternative<NegateNode>(n.kind)) return 3;
  return 5;
}

class Printer {
 public:
  explicit Printer(std::span<const std::string> vars) : vars_(vars) {}

  void print(const ExprNode& n) {
    std::visit([&](const auto& k) { print_kind(k); }, n.kind);
  }

  std::string out;

 private:
  void wrapped(const ExprNode& n, bool parens) {
    if (parens) out += '(';
    print(n);
    if (parens) out += ')';
  }

  void print_kind(const NumberNode& n) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
    out.append(buf, res.ptr);
  }
  void print_kind(const VariableNode& v) { out += vars_[v.index]; }
  void print_kind(const NegateNode& n) {
    out += '-';
    wrapped(*n.operand, precedence(*n.operand) < 3);
  }
  void print_kind(const BinaryNode& b) {
    if (b.op == BinaryOp::pow) {
      // Base must be an atom; the exponent is parsed as a factor.
      wrapped(*b.lhs, precedence(*b.lhs) <= 4);
      out += '^';
      wrapped(*b.rhs, precedence(*b.rhs) < 3);
      return;
    }
    const int p = (b.op == BinaryOp::add || b.op == BinaryOp::sub) ? 1 : 2;
    wrapped(*b.lhs, precedence(*b.lhs) < p);
    out += ' ';
    out += to_string(b.op);
    out += ' ';
    // Left-associative: an equal-precedence right operand keeps its parens,
    // except a negation, which the factor rule accepts anywhere.
    const bool is_neg = std::holds_alternative<NegateNode>(b.rhs->kind);
    wrapped(*b.rhs, !is_neg && precedence(*b.rhs) <= p);
  }
  void print_kind(const CallNode& c) {
    out += to_string(c.fn);
    out += '(';
    print(*c.arg);
    out += ')';
  }

  std::span<const std::string> vars_;
};

}  // namespace

std::string_view to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::add:
      return "+";
    case BinaryOp::sub:
      return "-";
    case BinaryOp::mul:
      return "*";
    case BinaryOp::div:
      return "/";
    case BinaryOp::pow:
      return "^";
  }
  return "?";
}

std::string_view to_string(Function fn) noexcept {
  for (const auto& [name, f] : kFunctions)
    if (f == fn) return name;
  return "?";
}

Expr::Expr(ExprPtr root, std::vector<std::string> variables, std::string source)
    : root_(std::move(root)), variables_(std::move(variables)), source_(std::move(source)) {}

Expr parse(std::string_view input, std::vector<std::string> variables) {
  if (variables.empty()) throw DomainError("an expression needs at least one declared variable");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!is_identifier(variables[i])) throw DomainError("'" + variables[i] + "' is not a valid variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[i] == variables[j]) throw DomainError("variable '" + variables[i] + "' is declared twice");
  }
  ExprPtr root = Parser(input, variables).parse_all();
  return Expr(std::move(root), std::move(variables), std::string(input));
}

double evaluate(const Expr& e, std::span<const double> values, const EvalOptions& options) {
  if (values.size() != e.variables().size()) {
    throw DomainError("expression has " + std::to_string(e.variables().size()) + " variables, got " +
                      std::to_string(values.size()) + " values");
  }
  return Evaluator(values, options).eval(e.root());
}

double evaluate(const Expr& e, const std::map<std::string, double, std::less<>>& bindings,
                const EvalOptions& options) {
  std::vector<double> values;
  values.reserve(e.variables().size());
  for (const auto& name : e.variables()) {
    const auto it = bindings.find(name);
    if (it == bindings.end()) throw DomainError("no value bound for variable '" + name + "'");
    values.push_back(it->second);
  }
  return evaluate(e, values, options);
}

std::string to_string(const Expr& e) {
  Printer p(e.variables());
  p.print(e.root());
  return std::move(p.out);
}

Integrand1D make_integrand_1d(Expr e, EvalOptions options) {
  if (e.variables().size() != 1) {
    throw DomainError("a one-variable integrand needs exactly one variable, expression has " +
                      std::to_string(e.variables().size()));
  }
  return [e = std::move(e), options](double x) { return evaluate(e, std::span<const double>(&x, 1), options); };
}

IntegrandND make_integrand(Expr e, EvalOptions options) {
  return [e = std::move(e), options](std::span<const double> x) { return evaluate(e, x, options); };
}

}  // namespace calcverify

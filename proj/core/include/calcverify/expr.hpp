#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "calcverify/errors.hpp"
#include "calcverify/quadrature.hpp"

namespace calcverify {

class CordicTable;

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, tan, exp, ln, sqrt, abs };

std::string_view to_string(BinaryOp op) noexcept;
std::string_view to_string(Function fn) noexcept;

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct NumberNode {
  double value;
};
struct VariableNode {
  std::size_t index;  // into Expr::variables()
};
struct NegateNode {
  ExprPtr operand;
};
struct BinaryNode {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct CallNode {
  Function fn;
  ExprPtr arg;
};

struct ExprNode {
  std::variant<NumberNode, VariableNode, NegateNode, BinaryNode, CallNode> kind;
  std::size_t offset;  // byte offset of the token that produced the node
};

/// Parsed, immutable expression over an ordered list of named variables.
/// Copies share the tree.
class Expr {
 public:
  Expr(ExprPtr root, std::vector<std::string> variables, std::string source);

  const ExprNode& root() const noexcept { return *root_; }
  std::span<const std::string> variables() const noexcept { return variables_; }
  const std::string& source() const noexcept { return source_; }

 private:
  ExprPtr root_;
  std::vector<std::string> variables_;
  std::string source_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string message, std::string expected)
      : Error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Arithmetic that has no real result (division by zero, ln of a
/// non-positive number, overflow, ...). `offset` points at the operator or
/// function name in the source text.
class EvalError : public DomainError {
 public:
  EvalError(std::size_t offset, const std::string& what) : DomainError(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses `input` by recursive descent:
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | name | name '(' expr ')' | '(' expr ')'
///
/// so '^' is right-associative and binds tighter than a leading minus
/// (-x^2 is -(x^2), 2^-1 is 0.5). A name is one of the builtins sin, cos,
/// tan, exp, ln, sqrt, abs when followed by '(', otherwise it must be one of
/// `variables`. Implicit multiplication ("2x") is rejected.
Expr parse(std::string_view input, std::vector<std::string> variables);

enum class TrigBackend { reference, cordic };

struct EvalOptions {
  TrigBackend trig = TrigBackend::reference;
  const CordicTable* cordic = nullptr;  // null: the default 40-iteration table
};

/// Evaluates with `values[i]` bound to variables()[i].
double evaluate(const Expr& e, std::span<const double> values, const EvalOptions& options = {});

/// Evaluates with named bindings; every variable of `e` must be bound.
double evaluate(const Expr& e, const std::map<std::string, double, std::less<>>& bindings,
                const EvalOptions& options = {});

/// Prints with the fewest parentheses the grammar needs; parsing the result
/// gives a tree that evaluates bit-identically.
std::string to_string(const Expr& e);

/// Wraps a one-variable expression as a callable.
Integrand1D make_integrand_1d(Expr e, EvalOptions options = {});

/// Wraps a d-variable expression; the argument span is in variable order.
IntegrandND make_integrand(Expr e, EvalOptions options = {});

}  // namespace calcverify

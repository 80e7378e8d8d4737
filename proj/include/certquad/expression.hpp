#pragma once

// Single-variable expression trees: parsing, canonical printing,
// evaluation and symbolic differentiation.
//
// Grammar (see docs/expressions.md):
//   expr    := term (('+' | '-') term)*
//   term    := power (('*' | '/') power)*
//   power   := unary ('^' power)?          right-associative
//   unary   := '-' unary | primary
//   primary := number | 'x' | name '(' expr ')' | '(' expr ')'
// Unary minus binds tighter than '^', so "-x^2" is (-x)^2.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace certquad {

enum class ExprKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Ln, Abs, Sign };

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Immutable expression tree with shared structure.  Constants are always
/// finite and non-negative; negative values are spelled Neg(Constant).
class Expr {
public:
  static Expr constant(double value);
  static Expr variable();
  static Expr binary(ExprKind kind, Expr lhs, Expr rhs);
  static Expr unary(ExprKind kind, Expr operand);

  ExprKind kind() const;
  double value() const;       // Constant only
  const Expr& lhs() const;    // binary nodes
  const Expr& rhs() const;    // binary nodes
  const Expr& operand() const;  // unary nodes

  bool depends_on_x() const;

  friend bool operator==(const Expr& a, const Expr& b);

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool is_binary(ExprKind kind);
bool is_function(ExprKind kind);
std::string_view function_name(ExprKind kind);

Expr parse(std::string_view text);

/// Canonical text form; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

/// Throws DomainError on division by zero, ln of a non-positive value,
/// a non-integer power of a negative base, or a non-finite result.
double evaluate(const Expr& e, double x);

/// Exact derivative with light simplification (constant folding, removal
/// of multiplications by 0 and 1).  abs'(u) = sign(u) u' with sign(0) = 0.
Expr differentiate(const Expr& e);

}  // namespace certquad

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gpword/quadext.hpp"

namespace gpword {

enum class ExprKind { Constant, Variable, Add, Sub, Mul, Pow, Floor, Frac };

class GpExpr;
using GpExprPtr = std::shared_ptr<const GpExpr>;

/// Immutable node of a generalised-polynomial expression in one variable n.
/// Trees are built through the static factories; Add/Sub/Mul over two
/// Constant operands fold to a single Constant, so every compound constant is
/// one leaf and pretty-printed text re-parses to a structurally equal tree.
class GpExpr {
 public:
  static GpExprPtr constant(QuadExt value);
  static GpExprPtr variable();
  static GpExprPtr add(GpExprPtr lhs, GpExprPtr rhs);
  static GpExprPtr sub(GpExprPtr lhs, GpExprPtr rhs);
  static GpExprPtr mul(GpExprPtr lhs, GpExprPtr rhs);
  /// base raised to a literal non-negative integer exponent.
  static GpExprPtr pow(GpExprPtr base, unsigned exponent);
  static GpExprPtr floor(GpExprPtr operand);
  static GpExprPtr frac(GpExprPtr operand);

  ExprKind kind() const { return kind_; }
  /// Constant nodes only.
  const QuadExt& value() const;
  /// Left child of a binary node, or the operand of Floor/Frac.
  const GpExprPtr& left() const;
  /// Right child of a binary node, or the base of Pow.
  const GpExprPtr& right() const;
  unsigned exponent() const;

 private:
  explicit GpExpr(ExprKind kind) : kind_(kind) {}

  ExprKind kind_;
  QuadExt value_;
  GpExprPtr left_;
  GpExprPtr right_;
  unsigned exponent_ = 0;
};

bool structurally_equal(const GpExprPtr& x, const GpExprPtr& y);
bool contains_variable(const GpExprPtr& expr);

/// The single radicand appearing among the constants, or 0 if none.
/// Throws invalid_input when two distinct radicands meet.
long long expr_radicand(const GpExprPtr& expr);

/// Exact value at integer n.
QuadExt eval(const GpExprPtr& expr, const BigInt& n);
QuadExt eval(const GpExprPtr& expr, long long n);

/// Canonical text form; parse(print(e)) is structurally equal to e.
std::string print(const GpExprPtr& expr);

/// Grammar: expr := term (('+'|'-') term)*
///          term := factor (('*'|'/') factor)*   -- '/' only by a constant
///          factor := '-' factor | power
///          power := primary ('^' INT)*
///          primary := INT ('/' INT)? | 'n' | 'sqrt' '(' INT ')'
///                   | 'floor' '(' expr ')' | 'frac' '(' expr ')'
///                   | '(' expr ')'
/// All constants live in one Q(sqrt(d)); mixing radicands is a parse_error
/// with the offset of the offending token.
GpExprPtr parse_expression(std::string_view text);

/// Parses a variable-free expression and evaluates it.
QuadExt parse_constant(std::string_view text);

/// The Sturmian word of slope alpha and intercept rho as an expression:
///   s(n) = floor(alpha*(n+1) + rho) - floor(alpha*n + rho) - floor(alpha).
/// alpha must be irrational.
GpExprPtr sturmian_expression(const QuadExt& alpha, const QuadExt& rho);

/// First `count` values of the Sturmian word, one byte per symbol, computed
/// incrementally (one exact floor per step).
std::string sturmian_prefix(const QuadExt& alpha, const QuadExt& rho, std::size_t count);

}  // namespace gpword

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dforall/rational.h"

namespace dforall {

enum class ExprKind {
  kVariable,
  kConstant,
  // Unary.
  kNeg,
  kAbs,
  kSqrt,
  kExp,
  kLog,
  kSin,
  kCos,
  kTan,
  kAsin,
  kAcos,
  kAtan,
  kSinh,
  kCosh,
  kTanh,
  // Binary.
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,  // Second child is a nonzero integer constant.
  kMin,
  kMax,
};

bool IsUnary(ExprKind kind);
bool IsBinary(ExprKind kind);

/// Symbol used by the input language ("sin", "+", "^", ...).
const char* Symbol(ExprKind kind);

/// Raised by point evaluation outside a function's natural domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Environment = std::map<std::string, double, std::less<>>;

struct ExprNode;

/// Immutable, cheaply copyable handle to a real-valued expression tree.
/// Subtrees may be shared between expressions.
class Expr {
 public:
  static Expr Variable(std::string name);
  static Expr Constant(Rational value);
  static Expr Constant(long value) { return Constant(Rational(value)); }
  static Expr Unary(ExprKind kind, Expr arg);
  static Expr Binary(ExprKind kind, Expr lhs, Expr rhs);
  /// Throws std::invalid_argument when exponent == 0.
  static Expr Pow(Expr base, int exponent);

  ExprKind kind() const;
  const std::string& name() const;
  const Rational& value() const;
  /// Integer exponent of a kPow node.
  int exponent() const;
  std::size_t arity() const;
  const Expr& arg(std::size_t i) const;

  bool is_constant() const { return kind() == ExprKind::kConstant; }
  bool is_variable() const { return kind() == ExprKind::kVariable; }

  std::set<std::string> FreeVars() const;

  /// Evaluates in double precision with round-to-nearest. Throws DomainError
  /// when a partial function is applied outside its domain and
  /// std::out_of_range for an unassigned variable.
  double Evaluate(const Environment& env) const;

  /// Structural equality.
  bool EqualTo(const Expr& other) const;

  /// S-expression in the input language.
  std::string ToString() const;

  /// Identity of the underlying node; equal for shared subtrees.
  const ExprNode* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  ExprKind kind;
  std::string name;
  Rational value;
  std::vector<Expr> args;
  double approx{0};  // kConstant: nearest double
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr abs(const Expr& e);
Expr sqrt(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr asin(const Expr& e);
Expr acos(const Expr& e);
Expr atan(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);
Expr tanh(const Expr& e);
Expr min(const Expr& a, const Expr& b);
Expr max(const Expr& a, const Expr& b);

/// Folds constant subexpressions and merges additive constants at the top of
/// a sum, so that (t - c) + c becomes t.
Expr FoldConstants(const Expr& e);

}  // namespace dforall

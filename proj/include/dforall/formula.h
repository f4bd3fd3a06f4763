#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "dforall/box.h"
#include "dforall/constraint.h"
#include "dforall/rational.h"

namespace dforall {

/// A variable with its bounded domain [lo, hi].
struct Declaration {
  std::string name;
  Rational lo;
  Rational hi;
};

enum class Comparison { kLt, kLe, kEq, kGe, kGt };
enum class FormulaKind { kCompare, kAnd, kOr, kNot, kImplies, kForall };

const char* Symbol(Comparison op);

struct FormulaNode;

/// Immutable Boolean structure over comparisons, as written in the input.
class Formula {
 public:
  static Formula Compare(Comparison op, Expr lhs, Expr rhs);
  static Formula And(std::vector<Formula> children);
  static Formula Or(std::vector<Formula> children);
  static Formula Not(Formula child);
  static Formula Implies(Formula premise, Formula conclusion);
  static Formula Forall(std::vector<Declaration> bound, Formula body);

  FormulaKind kind() const;
  Comparison comparison() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  const std::vector<Formula>& children() const;
  const std::vector<Declaration>& bound() const;

  std::string ToString() const;

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind;
  Comparison comparison{Comparison::kGe};
  Expr lhs = Expr::Constant(0L);
  Expr rhs = Expr::Constant(0L);
  std::vector<Formula> children;
  std::vector<Declaration> bound;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

/// A parsed input document. Free (existential) variables are the
/// declarations; every one has a finite domain.
struct Problem {
  std::vector<Declaration> vars;
  std::vector<Formula> assertions;

  /// Box of the declared domains, outward-rounded to doubles.
  Box InitialBox() const;
  std::vector<std::string> VarNames() const;
};

/// forall bound. (d_1 or ... or d_k); ground when bound is empty.
struct ForallClause {
  std::vector<Declaration> bound;
  std::vector<AtomicConstraint> disjuncts;

  bool is_ground() const { return bound.empty(); }
  /// Box of the bound-variable domains.
  Box BoundBox() const;
  std::string ToString() const;
};

/// Conjunction of forall-clauses.
struct CnfForallFormula {
  std::vector<ForallClause> clauses;

  bool is_ground() const;
  std::string ToString() const;
};

std::ostream& operator<<(std::ostream& os, const ForallClause& c);
std::ostream& operator<<(std::ostream& os, const CnfForallFormula& f);

/// Renders a declaration as `(declare-const x Real [lo, hi])`.
std::string DeclarationText(const Declaration& d);

/// A complete input document: the declarations followed by one assert per
/// clause.
std::string ToDocument(const std::vector<Declaration>& vars, const CnfForallFormula& f);

Interval DomainInterval(const Declaration& d);

}  // namespace dforall

#include "dforall/formula.h"

#include <sstream>
#include <stdexcept>

namespace dforall {

const char* Symbol(Comparison op) {
  switch (op) {
    case Comparison::kLt: return "<";
    case Comparison::kLe: return "<=";
    case Comparison::kEq: return "=";
    case Comparison::kGe: return ">=";
    case Comparison::kGt: return ">";
  }
  return "?";
}

Formula Formula::Compare(Comparison op, Expr lhs, Expr rhs) {
  FormulaNode node{FormulaKind::kCompare};
  node.comparison = op;
  node.lhs = std::move(lhs);
  node.rhs = std::move(rhs);
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::And(std::vector<Formula> children) {
  if (children.empty()) throw std::invalid_argument("and: needs at least one argument");
  FormulaNode node{FormulaKind::kAnd};
  node.children = std::move(children);
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::Or(std::vector<Formula> children) {
  if (children.empty()) throw std::invalid_argument("or: needs at least one argument");
  FormulaNode node{FormulaKind::kOr};
  node.children = std::move(children);
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::Not(Formula child) {
  FormulaNode node{FormulaKind::kNot};
  node.children = {std::move(child)};
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::Implies(Formula premise, Formula conclusion) {
  FormulaNode node{FormulaKind::kImplies};
  node.children = {std::move(premise), std::move(conclusion)};
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::Forall(std::vector<Declaration> bound, Formula body) {
  if (bound.empty()) throw std::invalid_argument("forall: needs at least one binding");
  FormulaNode node{FormulaKind::kForall};
  node.bound = std::move(bound);
  node.children = {std::move(body)};
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

FormulaKind Formula::kind() const { return node_->kind; }
Comparison Formula::comparison() const { return node_->comparison; }
const Expr& Formula::lhs() const { return node_->lhs; }
const Expr& Formula::rhs() const { return node_->rhs; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::vector<Declaration>& Formula::bound() const { return node_->bound; }

std::string Formula::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

namespace {

void WriteBinding(std::ostream& os, const Declaration& d) {
  os << "(" << d.name << " Real [" << ToString(d.lo) << ", " << ToString(d.hi) << "])";
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kCompare:
      return os << "(" << Symbol(f.comparison()) << " " << f.lhs() << " " << f.rhs() << ")";
    case FormulaKind::kForall:
      os << "(forall (";
      for (std::size_t i = 0; i < f.bound().size(); ++i) {
        if (i > 0) os << " ";
        WriteBinding(os, f.bound()[i]);
      }
      return os << ") " << f.children()[0] << ")";
    case FormulaKind::kAnd: os << "(and"; break;
    case FormulaKind::kOr: os << "(or"; break;
    case FormulaKind::kNot: os << "(not"; break;
    case FormulaKind::kImplies: os << "(=>"; break;
  }
  for (const Formula& c : f.children()) os << " " << c;
  return os << ")";
}

Interval DomainInterval(const Declaration& d) {
  return Interval(ToDoubleDown(d.lo), ToDoubleUp(d.hi));
}

Box Problem::InitialBox() const {
  std::vector<Interval> values;
  for (const Declaration& d : vars) values.push_back(DomainInterval(d));
  return Box(VarNames(), std::move(values));
}

std::vector<std::string> Problem::VarNames() const {
  std::vector<std::string> names;
  for (const Declaration& d : vars) names.push_back(d.name);
  return names;
}

Box ForallClause::BoundBox() const {
  std::vector<std::string> names;
  std::vector<Interval> values;
  for (const Declaration& d : bound) {
    names.push_back(d.name);
    values.push_back(DomainInterval(d));
  }
  return Box(names, std::move(values));
}

std::string ForallClause::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

bool CnfForallFormula::is_ground() const {
  for (const ForallClause& c : clauses) {
    if (!c.is_ground()) return false;
  }
  return true;
}

std::string CnfForallFormula::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ForallClause& c) {
  if (!c.is_ground()) {
    os << "(forall (";
    for (std::size_t i = 0; i < c.bound.size(); ++i) {
      if (i > 0) os << " ";
      WriteBinding(os, c.bound[i]);
    }
    os << ") ";
  }
  if (c.disjuncts.size() == 1) {
    os << c.disjuncts.front();
  } else {
    os << "(or";
    for (const AtomicConstraint& d : c.disjuncts) os << " " << d;
    os << ")";
  }
  if (!c.is_ground()) os << ")";
  return os;
}

std::ostream& operator<<(std::ostream& os, const CnfForallFormula& f) {
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    if (i > 0) os << "\n";
    os << f.clauses[i];
  }
  return os;
}

std::string DeclarationText(const Declaration& d) {
  return "(declare-const " + d.name + " Real [" + ToString(d.lo) + ", " + ToString(d.hi) + "])";
}

std::string ToDocument(const std::vector<Declaration>& vars, const CnfForallFormula& f) {
  std::ostringstream os;
  for (const Declaration& d : vars) os << DeclarationText(d) << "\n";
  for (const ForallClause& c : f.clauses) os << "(assert " << c << ")\n";
  return os.str();
}

}  // namespace dforall

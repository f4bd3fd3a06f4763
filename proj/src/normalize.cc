#include <map>
#include <set>
#include <variant>

#include "dforall/frontend.h"

namespace dforall {

namespace {

// Negation normal form: atoms under and/or/forall.
struct Nnf {
  enum Kind { kAtom, kAnd, kOr, kForall } kind;
  AtomicConstraint atom{Expr::Constant(0L), Relation::kGeq};
  std::vector<Nnf> children;
  std::vector<Declaration> bound;
};

Expr Difference(const Expr& a, const Expr& b) {
  if (b.is_constant() && b.value() == 0) return a;
  return a - b;
}

Nnf Atom(AtomicConstraint c) { return Nnf{Nnf::kAtom, std::move(c), {}, {}}; }

Nnf Negate(const Nnf& n) {
  switch (n.kind) {
    case Nnf::kAtom:
      return Atom(NegateAtom(n.atom));
    case Nnf::kAnd:
    case Nnf::kOr: {
      Nnf out{n.kind == Nnf::kAnd ? Nnf::kOr : Nnf::kAnd};
      for (const Nnf& c : n.children) out.children.push_back(Negate(c));
      return out;
    }
    case Nnf::kForall:
      break;
  }
  throw NormalizeError("negated universal quantifier (an existential) has no CNF-forall form");
}

Nnf ToNnf(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kCompare: {
      const Expr d = Difference(f.lhs(), f.rhs());
      switch (f.comparison()) {
        case Comparison::kGe: return Atom({d, Relation::kGeq});
        case Comparison::kGt: return Atom({d, Relation::kGt});
        case Comparison::kLe: return Atom(NegateAtom({d, Relation::kGt}));
        case Comparison::kLt: return Atom(NegateAtom({d, Relation::kGeq}));
        case Comparison::kEq: {
          Nnf out{Nnf::kAnd};
          out.children.push_back(Atom({d, Relation::kGeq}));
          out.children.push_back(Atom({-d, Relation::kGeq}));
          return out;
        }
      }
      break;
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      Nnf out{f.kind() == FormulaKind::kAnd ? Nnf::kAnd : Nnf::kOr};
      for (const Formula& c : f.children()) out.children.push_back(ToNnf(c));
      return out;
    }
    case FormulaKind::kNot:
      return Negate(ToNnf(f.children()[0]));
    case FormulaKind::kImplies: {
      Nnf out{Nnf::kOr};
      out.children.push_back(Negate(ToNnf(f.children()[0])));
      out.children.push_back(ToNnf(f.children()[1]));
      return out;
    }
    case FormulaKind::kForall: {
      Nnf out{Nnf::kForall};
      out.bound = f.bound();
      out.children.push_back(ToNnf(f.children()[0]));
      return out;
    }
  }
  throw std::logic_error("ToNnf: unhandled formula");
}

Expr Substitute(const Expr& e, const std::map<std::string, std::string>& renaming) {
  if (e.is_variable()) {
    const auto it = renaming.find(e.name());
    return it == renaming.end() ? e : Expr::Variable(it->second);
  }
  if (e.is_constant()) return e;
  if (e.kind() == ExprKind::kPow) return Expr::Pow(Substitute(e.arg(0), renaming), e.exponent());
  if (e.arity() == 1) return Expr::Unary(e.kind(), Substitute(e.arg(0), renaming));
  return Expr::Binary(e.kind(), Substitute(e.arg(0), renaming), Substitute(e.arg(1), renaming));
}

// forall (a.bound) A  or  forall (b.bound) B  ==  forall (both) (A or B), once
// clashing bound names in b are renamed apart.
ForallClause Merge(const ForallClause& a, const ForallClause& b) {
  ForallClause out = a;
  std::set<std::string> taken;
  for (const Declaration& d : a.bound) taken.insert(d.name);
  std::map<std::string, std::string> renaming;
  for (const Declaration& d : b.bound) {
    Declaration copy = d;
    if (taken.count(d.name)) {
      int suffix = 1;
      std::string fresh;
      do {
        fresh = d.name + "_" + std::to_string(suffix++);
      } while (taken.count(fresh));
      renaming[d.name] = fresh;
      copy.name = fresh;
    }
    taken.insert(copy.name);
    out.bound.push_back(std::move(copy));
  }
  for (const AtomicConstraint& c : b.disjuncts) {
    out.disjuncts.push_back(
        renaming.empty() ? c : AtomicConstraint{Substitute(c.lhs, renaming), c.relation});
  }
  return out;
}

std::vector<ForallClause> ToCnf(const Nnf& n, const NormalizeOptions& options) {
  switch (n.kind) {
    case Nnf::kAtom:
      return {ForallClause{{}, {n.atom}}};
    case Nnf::kAnd: {
      std::vector<ForallClause> out;
      for (const Nnf& c : n.children) {
        std::vector<ForallClause> part = ToCnf(c, options);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > options.max_clauses) {
          throw NormalizeError("CNF conversion exceeds the clause limit of " +
                               std::to_string(options.max_clauses));
        }
      }
      return out;
    }
    case Nnf::kOr: {
      std::vector<ForallClause> acc = ToCnf(n.children[0], options);
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        const std::vector<ForallClause> rhs = ToCnf(n.children[i], options);
        if (acc.size() * rhs.size() > options.max_clauses) {
          throw NormalizeError("CNF conversion exceeds the clause limit of " +
                               std::to_string(options.max_clauses));
        }
        std::vector<ForallClause> next;
        next.reserve(acc.size() * rhs.size());
        for (const ForallClause& a : acc) {
          for (const ForallClause& b : rhs) next.push_back(Merge(a, b));
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Nnf::kForall: {
      std::vector<ForallClause> out = ToCnf(n.children[0], options);
      for (ForallClause& c : out) c.bound.insert(c.bound.begin(), n.bound.begin(), n.bound.end());
      return out;
    }
  }
  throw std::logic_error("ToCnf: unhandled node");
}

void DropUnusedBound(ForallClause* clause) {
  std::set<std::string> used;
  for (const AtomicConstraint& c : clause->disjuncts) {
    for (const std::string& v : c.lhs.FreeVars()) used.insert(v);
  }
  std::erase_if(clause->bound, [&](const Declaration& d) { return !used.count(d.name); });
}

}  // namespace

CnfForallFormula Normalize(const Problem& problem, const NormalizeOptions& options) {
  CnfForallFormula result;
  for (const Formula& assertion : problem.assertions) {
    for (ForallClause& c : ToCnf(ToNnf(assertion), options)) {
      DropUnusedBound(&c);
      result.clauses.push_back(std::move(c));
    }
    if (result.clauses.size() > options.max_clauses) {
      throw NormalizeError("CNF conversion exceeds the clause limit of " +
                           std::to_string(options.max_clauses));
    }
  }
  return result;
}

ForallClause Weaken(const ForallClause& c, const Rational& d) {
  if (d <= 0) throw std::invalid_argument("Weaken: amount must be positive");
  ForallClause out{c.bound, {}};
  for (const AtomicConstraint& a : c.disjuncts) {
    out.disjuncts.push_back({a.lhs + Expr::Constant(d), Relation::kGeq});
  }
  return out;
}

CnfForallFormula Weaken(const CnfForallFormula& f, const Rational& d) {
  CnfForallFormula out;
  for (const ForallClause& c : f.clauses) out.clauses.push_back(Weaken(c, d));
  return out;
}

std::vector<AtomicConstraint> Strengthen(const std::vector<AtomicConstraint>& atoms,
                                         const Rational& e) {
  if (e <= 0) throw std::invalid_argument("Strengthen: amount must be positive");
  std::vector<AtomicConstraint> out;
  out.reserve(atoms.size());
  for (const AtomicConstraint& a : atoms) {
    out.push_back({a.lhs - Expr::Constant(e), Relation::kGeq});
  }
  return out;
}

std::vector<AtomicConstraint> NegateClauseBody(const ForallClause& clause) {
  std::vector<AtomicConstraint> out;
  out.reserve(clause.disjuncts.size());
  for (const AtomicConstraint& d : clause.disjuncts) out.push_back(NegateAtom(d));
  return out;
}

}  // namespace dforall

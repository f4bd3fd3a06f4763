#include "dforall/constraint.h"

#include <cmath>
#include <sstream>

namespace dforall {

bool AtomicConstraint::Satisfied(const Environment& env) const {
  const double v = lhs.Evaluate(env);
  return relation == Relation::kGeq ? v >= 0 : v > 0;
}

double AtomicConstraint::Residual(const Environment& env) const {
  try {
    return lhs.Evaluate(env);
  } catch (const DomainError&) {
    return std::nan("");
  }
}

std::string AtomicConstraint::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const AtomicConstraint& c) {
  return os << "(" << (c.relation == Relation::kGeq ? ">=" : ">") << " " << c.lhs << " 0)";
}

AtomicConstraint NegateAtom(const AtomicConstraint& c) {
  return AtomicConstraint{-c.lhs, c.relation == Relation::kGeq ? Relation::kGt : Relation::kGeq};
}

}  // namespace dforall

#pragma once

#include <ostream>
#include <string>

#include "dforall/expr.h"

namespace dforall {

enum class Relation { kGeq, kGt };

/// `lhs >= 0` or `lhs > 0`. Every other comparison is rewritten into this
/// shape by the frontend.
struct AtomicConstraint {
  Expr lhs;
  Relation relation{Relation::kGeq};

  /// Throws DomainError like Expr::Evaluate.
  bool Satisfied(const Environment& env) const;
  /// Value of lhs, or std::nullopt-like NaN when out of domain.
  double Residual(const Environment& env) const;

  bool EqualTo(const AtomicConstraint& other) const {
    return relation == other.relation && lhs.EqualTo(other.lhs);
  }
  std::string ToString() const;
};

std::ostream& operator<<(std::ostream& os, const AtomicConstraint& c);

/// not(t > 0) is (-t >= 0); not(t >= 0) is (-t > 0).
AtomicConstraint NegateAtom(const AtomicConstraint& c);

}  // namespace dforall

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dforall/formula.h"

namespace dforall {

/// Input error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised when a formula has no CNF-forall form we accept (an existential
/// under a universal, or a blow-up past the clause limit).
class NormalizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the s-expression input language:
///
///   (declare-const x Real [-1, 1])
///   (assert (forall ((y Real [0, 1])) (>= (- x y) 0)))
///
/// Throws ParseError.
Problem Parse(std::string_view text);

struct NormalizeOptions {
  std::size_t max_clauses{10000};
};

/// Eliminates =>, =, <, <=, not; distributes to CNF; attaches each forall to
/// the clauses under it. Bound variables a clause does not mention are
/// dropped. Throws NormalizeError.
CnfForallFormula Normalize(const Problem& problem, const NormalizeOptions& options = {});

/// Every disjunct `l o 0` becomes `l + d >= 0`. Requires d > 0.
CnfForallFormula Weaken(const CnfForallFormula& f, const Rational& d);
ForallClause Weaken(const ForallClause& c, const Rational& d);

/// Every atom `l o 0` becomes `l - e >= 0`. Requires e > 0.
std::vector<AtomicConstraint> Strengthen(const std::vector<AtomicConstraint>& atoms,
                                         const Rational& e);

/// The negated body of a clause: one `-f_i > 0` per disjunct `f_i o 0`.
std::vector<AtomicConstraint> NegateClauseBody(const ForallClause& clause);

}  // namespace dforall

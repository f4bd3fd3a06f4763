#pragma once

#include <span>
#include <vector>

#include "dforall/box.h"
#include "dforall/constraint.h"
#include "dforall/tape.h"

namespace dforall {

/// Anything that can shrink a box without losing solutions of the
/// constraint it stands for.
class PruningOperator {
 public:
  virtual ~PruningOperator() = default;
  /// Shrinks *box in place; leaves it empty when infeasible.
  virtual void Prune(Box* box) = 0;
};

/// HC4-style forward/backward propagation for one atomic constraint. The
/// forward enclosures are cached per node between the two passes, so one
/// instance must not be used by two threads at once.
class Contractor final : public PruningOperator {
 public:
  Contractor(AtomicConstraint constraint, const VariableSet& vars);

  void Prune(Box* box) override;

  const AtomicConstraint& constraint() const { return constraint_; }
  const Tape& tape() const { return tape_; }

 private:
  AtomicConstraint constraint_;
  Tape tape_;
  std::vector<Interval> values_;
};

/// Runs the backward pass of HC4Revise given forward values with the root
/// already narrowed. Returns false when some node became empty; narrowed
/// variable enclosures are written into *box.
bool BackwardPropagate(const Tape& tape, std::vector<Interval>* values, Box* box);

/// Pruning for a ground disjunction: the hull of the per-disjunct prunes.
class ClauseContractor final : public PruningOperator {
 public:
  ClauseContractor(const std::vector<AtomicConstraint>& disjuncts, const VariableSet& vars);

  void Prune(Box* box) override;
  std::vector<Contractor>& disjuncts() { return disjuncts_; }

 private:
  std::vector<Contractor> disjuncts_;
};

/// One-shot convenience: prunes a copy of box with c.
Box PruneAtom(const Box& box, const AtomicConstraint& c);

struct FixedpointOptions {
  /// A round counts as progress only when some component width shrinks by at
  /// least this fraction...
  double rel_progress{0.01};
  /// ...and by at least this absolute amount.
  double abs_progress{1e-12};
  int max_rounds{1000};
};

/// True when some component of after is narrower than in before by the
/// options' relative and absolute thresholds.
bool Progressed(const Box& before, const Box& after, const FixedpointOptions& options);

struct FixedpointStats {
  int rounds{0};
  bool hit_round_cap{false};
};

/// Applies ops round-robin until a full round makes no progress, the box
/// becomes empty, or the round cap is reached.
Box Fixedpoint(std::span<PruningOperator* const> ops, Box box,
               const FixedpointOptions& options = {}, FixedpointStats* stats = nullptr);

/// Fixedpoint over atomic constraints.
Box Fixedpoint(const std::vector<AtomicConstraint>& constraints, const Box& box,
               const FixedpointOptions& options = {}, FixedpointStats* stats = nullptr);

}  // namespace dforall

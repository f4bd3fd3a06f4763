#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dforall/box.h"
#include "dforall/contractor.h"
#include "dforall/formula.h"
#include "dforall/local_opt.h"
#include "dforall/tape.h"

namespace dforall {

class BranchAndPrune;

/// Error-control parameters for forall-clause pruning. A valid set satisfies
/// 0 < delta_prime < epsilon < delta: counterexamples found with slack
/// delta_prime against an epsilon-strengthened query are genuine, and their
/// absence certifies the delta-weakened clause.
class ForallPruneParams {
 public:
  /// Throws std::invalid_argument unless 0 < delta_prime < epsilon < delta.
  static ForallPruneParams Create(Rational delta, Rational epsilon, Rational delta_prime);
  /// Skips validation. Only for demonstrating what goes wrong without it.
  static ForallPruneParams Unchecked(Rational delta, Rational epsilon, Rational delta_prime);

  const Rational& delta() const { return delta_; }
  const Rational& epsilon() const { return epsilon_; }
  const Rational& delta_prime() const { return delta_prime_; }

  bool local_opt{true};
  LocalOptConfig local_opt_config;
  /// Branchings allowed to one counterexample query.
  std::int64_t inner_max_branchings{100000};
  /// Seconds allowed to one counterexample query.
  double inner_time_budget{10.0};
  /// Counterexample rounds allowed to one Prune call.
  int max_rounds{100};
  double width_floor{1e-12};
  /// A round that shrinks no component past these thresholds ends the loop.
  FixedpointOptions progress;

 private:
  ForallPruneParams(Rational delta, Rational epsilon, Rational delta_prime);
  Rational delta_;
  Rational epsilon_;
  Rational delta_prime_;
};

/// How the last Prune call ended.
enum class ForallPruneStatus {
  kNoCounterexample,  // strengthened query unsat: clause certified on the box
  kEmptied,           // box pruned to empty
  kStalled,           // a counterexample was found but the box barely changed
  kRoundLimit,        // max_rounds counterexamples, box still changing
  kExhausted,         // inner search ran out of budget; no certificate
};

struct ForallPruneStats {
  std::int64_t calls{0};
  std::int64_t counterexamples{0};
  std::int64_t inner_branchings{0};
  std::int64_t inner_exhausted{0};
  std::int64_t localopt_calls{0};
  std::int64_t localopt_improved{0};
  /// Counterexamples whose (a, b) pair passed the runtime check
  /// max_i f_i(a, b) <= -epsilon + delta_prime.
  std::int64_t checked_counterexamples{0};
};

/// A counterexample to a forall-clause on a box of free variables.
struct Counterexample {
  std::vector<double> x;  // midpoint a of the certified joint box
  std::vector<double> y;  // bound-variable point b
};

/// Pruning operator for one forall-clause. Owns its inner branch-and-prune
/// session; not safe to share between threads.
class ForallPruner final : public PruningOperator {
 public:
  ForallPruner(const ForallClause& clause, std::shared_ptr<const VariableSet> free_vars,
               ForallPruneParams params);
  ~ForallPruner() override;
  ForallPruner(const ForallPruner&) = delete;
  ForallPruner& operator=(const ForallPruner&) = delete;

  void Prune(Box* box) override;

  /// Runs the epsilon-strengthened counterexample query over box x B_y.
  /// Returns nothing when the query is unsat or the inner budget ran out;
  /// the latter sets *exhausted. A returned point has been checked against
  /// the strengthened bound and optionally refined by local optimization.
  std::optional<Counterexample> FindCounterexample(const Box& box, bool* exhausted = nullptr);

  ForallPruneStatus last_status() const { return last_status_; }
  const ForallPruneStats& stats() const { return stats_; }
  const ForallPruneParams& params() const { return params_; }
  const ForallClause& clause() const { return clause_; }
  /// max_i f_i(a, b) evaluated in double precision.
  double BodyValue(std::span<const double> a, std::span<const double> b) const;

 private:
  Box JointBox(const Box& x_box, std::span<const double> y_point) const;
  bool SatisfiesStrengthenedBound(const std::vector<double>& joint_point) const;
  /// Hull of the per-disjunct prunes of box x {y}.
  Box PruneWithPoint(const Box& box, std::span<const double> y);

  ForallClause clause_;
  std::shared_ptr<const VariableSet> free_vars_;
  std::shared_ptr<const VariableSet> joint_vars_;
  ForallPruneParams params_;
  Box y_domain_;
  std::vector<Tape> disjunct_tapes_;
  std::vector<Contractor> disjunct_contractors_;
  std::unique_ptr<BranchAndPrune> inner_;
  double ce_bound_;
  ForallPruneStatus last_status_{ForallPruneStatus::kNoCounterexample};
  ForallPruneStats stats_;
};

/// One-shot counterexample search (builds a temporary pruner).
std::optional<Counterexample> FindCounterexample(const Box& box, const ForallClause& clause,
                                                 const ForallPruneParams& params);

/// One-shot forall-clause pruning (builds a temporary pruner).
Box PruneForall(const Box& box, const ForallClause& clause, const ForallPruneParams& params,
                ForallPruneStatus* status = nullptr);

}  // namespace dforall

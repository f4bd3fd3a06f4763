#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dforall/box.h"
#include "dforall/contractor.h"
#include "dforall/formula.h"
#include "dforall/forall_prune.h"
#include "dforall/local_opt.h"

namespace dforall {

enum class BranchRule { kLargestFirst, kRoundRobin };
/// kBestFirst expands the box whose weakest ground clause has the largest
/// enclosure upper bound.
enum class SearchOrder { kDepthFirst, kBreadthFirst, kBestFirst };
enum class Verdict { kDeltaSat, kUnsat, kUnknown };

const char* ToString(Verdict v);

/// Solver parameters. delta, epsilon and delta_prime are fixed at
/// construction and must satisfy 0 < delta_prime < epsilon < delta.
class SolverConfig {
 public:
  /// epsilon = epsilon_factor * delta, delta_prime = delta_prime_factor * delta.
  /// Throws std::invalid_argument on an invalid combination.
  explicit SolverConfig(Rational delta, Rational epsilon_factor = Rational(99, 100),
                        Rational delta_prime_factor = Rational(98, 100));
  /// Throws std::invalid_argument unless 0 < delta_prime < epsilon < delta.
  static SolverConfig FromValues(Rational delta, Rational epsilon, Rational delta_prime);

  const Rational& delta() const { return delta_; }
  const Rational& epsilon() const { return epsilon_; }
  const Rational& delta_prime() const { return delta_prime_; }

  bool local_opt{true};
  LocalOptConfig local_opt_config;
  BranchRule branch_rule{BranchRule::kLargestFirst};
  SearchOrder order{SearchOrder::kDepthFirst};
  /// Outer branchings before giving up with kUnknown.
  std::int64_t max_branchings{10'000'000};
  /// Wall-clock seconds before giving up with kUnknown; <= 0 means none.
  double time_budget{0};
  std::int64_t inner_max_branchings{100000};
  double inner_time_budget{10.0};
  int max_ce_rounds{100};
  /// Components narrower than this are never bisected.
  double width_floor{1e-12};
  FixedpointOptions fixedpoint;

  ForallPruneParams PruneParams() const;

 private:
  SolverConfig(Rational delta, Rational epsilon, Rational delta_prime, bool);
  Rational delta_;
  Rational epsilon_;
  Rational delta_prime_;
};

/// Why a clause holds (delta-weakened) on the witness box.
struct ClauseCertificate {
  std::size_t clause{0};
  bool universal{false};
  /// Ground clauses: the disjunct whose enclosure is >= -delta, and that
  /// enclosure's lower bound. Forall-clauses: -1, and no counterexample to
  /// the epsilon-strengthened query exists on the box.
  int disjunct{-1};
  double lower_bound{0};
};

struct SolverStats {
  std::int64_t branchings{0};
  std::int64_t boxes_processed{0};
  std::int64_t prune_rounds{0};
  std::int64_t floor_discards{0};
  std::int64_t counterexamples{0};
  std::int64_t checked_counterexamples{0};
  std::int64_t inner_branchings{0};
  std::int64_t inner_exhausted{0};
  std::int64_t localopt_calls{0};
  std::int64_t localopt_improved{0};
  double seconds{0};
};

struct SolveResult {
  Verdict verdict{Verdict::kUnknown};
  /// Witness box for kDeltaSat.
  Box box;
  std::vector<ClauseCertificate> certificates;
  SolverStats stats;
  /// Reason for kUnknown.
  std::string note;
};

/// Engine-level options shared by the outer solver and the inner
/// counterexample search.
struct SearchOptions {
  Rational delta;
  double width_floor{1e-12};
  BranchRule branch_rule{BranchRule::kLargestFirst};
  SearchOrder order{SearchOrder::kDepthFirst};
  std::int64_t max_branchings{10'000'000};
  double time_budget{0};
  FixedpointOptions fixedpoint;
  /// Ground formulas only: answer kDeltaSat with the midpoint of a pruned box
  /// as a point box when every clause holds there up to delta.
  bool accept_point_witness{false};
};

/// Branch-and-prune over a conjunction of clauses: ground clauses prune by
/// forward/backward propagation, forall-clauses by counterexamples.
class BranchAndPrune {
 public:
  /// pruners[i] belongs to formula clause universal_index[i].
  BranchAndPrune(std::shared_ptr<const VariableSet> vars, const CnfForallFormula& formula,
                 std::vector<std::unique_ptr<ForallPruner>> pruners, SearchOptions options);
  ~BranchAndPrune();

  SolveResult Run(const Box& initial);

  /// Checks the pruned box against the delta-weakened ground clauses and
  /// the forall-clauses' last pruning outcome.
  bool Certify(const Box& box, bool at_floor, std::vector<ClauseCertificate>* certificates);

  const std::vector<std::unique_ptr<ForallPruner>>& pruners() const { return pruners_; }

 private:
  double Score(const Box& box) const;
  std::optional<Box> PointWitness(const Box& box) const;

  std::shared_ptr<const VariableSet> vars_;
  SearchOptions options_;
  double neg_delta_;  // a double >= -delta
  std::vector<std::size_t> ground_index_;
  std::vector<std::unique_ptr<ClauseContractor>> ground_;
  std::vector<std::vector<Tape>> ground_tapes_;
  std::vector<std::size_t> universal_index_;
  std::vector<std::unique_ptr<ForallPruner>> pruners_;
  std::vector<PruningOperator*> ops_;
  std::size_t round_robin_next_{0};
};

/// Chooses the component to bisect. kLargestFirst takes the widest
/// bisectable component (first in declaration order on ties); kRoundRobin
/// cycles through the components starting at *next, skipping unbisectable
/// ones, and advances *next. Throws UnbranchableError when every component
/// is below width_floor or cannot be split.
std::size_t PickBranchVariable(const Box& box, BranchRule rule, double width_floor,
                               std::size_t* next = nullptr);

/// Decides the formula on initial up to delta: kUnsat when it has no
/// solution in the box, kDeltaSat with a witness box on which the
/// delta-weakened formula holds, kUnknown when a budget ran out.
SolveResult Solve(const CnfForallFormula& formula, const Box& initial, const SolverConfig& config);

/// Standalone certificate check of a box: ground clauses by enclosure lower
/// bounds, forall-clauses by an epsilon-strengthened counterexample query.
bool CertifyBox(const Box& box, const CnfForallFormula& formula, const SolverConfig& config,
                std::vector<ClauseCertificate>* certificates = nullptr);

}  // namespace dforall

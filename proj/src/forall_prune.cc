#include "dforall/forall_prune.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dforall/frontend.h"
#include "dforall/solver.h"

namespace dforall {

ForallPruneParams::ForallPruneParams(Rational delta, Rational epsilon, Rational delta_prime)
    : delta_(std::move(delta)), epsilon_(std::move(epsilon)), delta_prime_(std::move(delta_prime)) {}

ForallPruneParams ForallPruneParams::Create(Rational delta, Rational epsilon,
                                            Rational delta_prime) {
  if (!(0 < delta_prime && delta_prime < epsilon && epsilon < delta)) {
    throw std::invalid_argument("error-control parameters must satisfy 0 < delta' < epsilon < delta (got delta=" +
                                ToDecimalString(delta) + ", epsilon=" + ToDecimalString(epsilon) +
                                ", delta'=" + ToDecimalString(delta_prime) + ")");
  }
  return ForallPruneParams(std::move(delta), std::move(epsilon), std::move(delta_prime));
}

ForallPruneParams ForallPruneParams::Unchecked(Rational delta, Rational epsilon,
                                               Rational delta_prime) {
  return ForallPruneParams(std::move(delta), std::move(epsilon), std::move(delta_prime));
}

namespace {

std::shared_ptr<const VariableSet> JointVariables(const VariableSet& free_vars,
                                                  const ForallClause& clause) {
  std::vector<std::string> names = free_vars.names();
  for (const Declaration& d : clause.bound) {
    if (free_vars.IndexOf(d.name) >= 0) {
      throw std::invalid_argument("bound variable '" + d.name + "' clashes with a free variable");
    }
    names.push_back(d.name);
  }
  return std::make_shared<const VariableSet>(std::move(names));
}

// The counterexample query: one ground clause -f_i - epsilon >= 0 per
// disjunct f_i >= 0. With a zero epsilon (misconfiguration demo) the query
// is the plain negation -f_i > 0.
CnfForallFormula CounterexampleQuery(const ForallClause& clause, const Rational& epsilon) {
  const std::vector<AtomicConstraint> negated = NegateClauseBody(clause);
  const std::vector<AtomicConstraint> query =
      epsilon > 0 ? Strengthen(negated, epsilon) : negated;
  CnfForallFormula f;
  for (const AtomicConstraint& c : query) f.clauses.push_back(ForallClause{{}, {c}});
  return f;
}

}  // namespace

ForallPruner::ForallPruner(const ForallClause& clause,
                           std::shared_ptr<const VariableSet> free_vars, ForallPruneParams params)
    : clause_(clause),
      free_vars_(std::move(free_vars)),
      joint_vars_(JointVariables(*free_vars_, clause_)),
      params_(std::move(params)),
      y_domain_(clause_.BoundBox()),
      ce_bound_(ToDoubleUp(Rational(params_.delta_prime() - params_.epsilon()))) {
  for (const AtomicConstraint& d : clause_.disjuncts) {
    disjunct_tapes_.emplace_back(d.lhs, *joint_vars_);
    disjunct_contractors_.emplace_back(d, *joint_vars_);
  }
  SearchOptions inner;
  inner.delta = params_.delta_prime();
  inner.width_floor = params_.width_floor;
  inner.max_branchings = params_.inner_max_branchings;
  inner.time_budget = params_.inner_time_budget;
  inner.fixedpoint = params_.progress;
  inner.order = SearchOrder::kBestFirst;
  inner.accept_point_witness = true;
  inner_ = std::make_unique<BranchAndPrune>(joint_vars_,
                                            CounterexampleQuery(clause_, params_.epsilon()),
                                            std::vector<std::unique_ptr<ForallPruner>>{}, inner);
}

ForallPruner::~ForallPruner() = default;

Box ForallPruner::JointBox(const Box& x_box, std::span<const double> y_point) const {
  std::vector<Interval> values = x_box.values();
  for (double v : y_point) values.push_back(Interval::Point(v));
  return Box(joint_vars_, std::move(values));
}

double ForallPruner::BodyValue(std::span<const double> a, std::span<const double> b) const {
  std::vector<double> joint(a.begin(), a.end());
  joint.insert(joint.end(), b.begin(), b.end());
  double worst = -Interval::kInf;
  for (const Tape& t : disjunct_tapes_) {
    const double v = t.EvaluatePoint(joint);
    if (std::isnan(v)) return v;
    worst = std::max(worst, v);
  }
  return worst;
}

bool ForallPruner::SatisfiesStrengthenedBound(const std::vector<double>& joint_point) const {
  for (const Tape& t : disjunct_tapes_) {
    const double v = t.EvaluatePoint(joint_point);
    if (std::isnan(v)) return false;
    // Allowance for round-to-nearest evaluation error of the point value.
    const double slack = 1e-9 * std::max(1.0, std::fabs(v));
    if (v > ce_bound_ + slack) return false;
  }
  return true;
}

std::optional<Counterexample> ForallPruner::FindCounterexample(const Box& box, bool* exhausted) {
  if (exhausted) *exhausted = false;
  std::vector<Interval> joint_values = box.values();
  for (const Interval& y : y_domain_.values()) joint_values.push_back(y);
  const SolveResult r = inner_->Run(Box(joint_vars_, std::move(joint_values)));
  stats_.inner_branchings += r.stats.branchings;
  if (r.verdict == Verdict::kUnknown) {
    ++stats_.inner_exhausted;
    if (exhausted) *exhausted = true;
    return std::nullopt;
  }
  if (r.verdict == Verdict::kUnsat) return std::nullopt;

  std::vector<double> joint = r.box.Midpoint();
  if (!SatisfiesStrengthenedBound(joint)) {
    std::ostringstream os;
    os << "spurious counterexample: max_i f_i(a, b) = "
       << BodyValue(std::span(joint).first(box.size()), std::span(joint).subspan(box.size()))
       << " exceeds -epsilon + delta' = " << ce_bound_ << " for clause " << clause_;
    throw std::logic_error(os.str());
  }
  ++stats_.checked_counterexamples;
  Counterexample ce{std::vector<double>(joint.begin(), joint.begin() + box.size()),
                    std::vector<double>(joint.begin() + box.size(), joint.end())};
  if (params_.local_opt && !ce.y.empty()) {
    ++stats_.localopt_calls;
    const LocalOptResult refined =
        RefineCounterexample(ce.x, ce.y, disjunct_tapes_, y_domain_, params_.local_opt_config);
    if (refined.improved) {
      std::vector<double> candidate = ce.x;
      candidate.insert(candidate.end(), refined.point.begin(), refined.point.end());
      if (SatisfiesStrengthenedBound(candidate)) {
        ce.y = refined.point;
        ++stats_.localopt_improved;
      }
    }
  }
  ++stats_.counterexamples;
  return ce;
}

Box ForallPruner::PruneWithPoint(const Box& box, std::span<const double> y) {
  FixedpointOptions single;
  Box hull = box;
  hull.set_empty();
  for (Contractor& c : disjunct_contractors_) {
    PruningOperator* op = &c;
    const Box pruned = Fixedpoint(std::span(&op, 1), JointBox(box, y), single);
    if (pruned.is_empty()) continue;
    for (std::size_t i = 0; i < hull.size(); ++i) hull[i] = Hull(hull[i], pruned[i]);
  }
  if (hull.is_empty()) hull.set_empty();
  return hull;
}

void ForallPruner::Prune(Box* box) {
  ++stats_.calls;
  if (box->is_empty()) {
    last_status_ = ForallPruneStatus::kEmptied;
    return;
  }
  for (int round = 0; round < params_.max_rounds; ++round) {
    const Box previous = *box;
    bool exhausted = false;
    const std::optional<Counterexample> ce = FindCounterexample(*box, &exhausted);
    if (!ce) {
      last_status_ =
          exhausted ? ForallPruneStatus::kExhausted : ForallPruneStatus::kNoCounterexample;
      return;
    }
    *box = PruneWithPoint(*box, ce->y);
    if (box->is_empty()) {
      last_status_ = ForallPruneStatus::kEmptied;
      return;
    }
    if (!Progressed(previous, *box, params_.progress)) {
      last_status_ = ForallPruneStatus::kStalled;
      return;
    }
  }
  last_status_ = ForallPruneStatus::kRoundLimit;
}

std::optional<Counterexample> FindCounterexample(const Box& box, const ForallClause& clause,
                                                 const ForallPruneParams& params) {
  ForallPruner pruner(clause, box.vars(), params);
  return pruner.FindCounterexample(box);
}

Box PruneForall(const Box& box, const ForallClause& clause, const ForallPruneParams& params,
                ForallPruneStatus* status) {
  ForallPruner pruner(clause, box.vars(), params);
  Box result = box;
  pruner.Prune(&result);
  if (status) *status = pruner.last_status();
  return result;
}

}  // namespace dforall

#include "dforall/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace dforall {

const char* ToString(Verdict v) {
  switch (v) {
    case Verdict::kDeltaSat:
      return "delta-sat";
    case Verdict::kUnsat:
      return "unsat";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

SolverConfig::SolverConfig(Rational delta, Rational epsilon, Rational delta_prime, bool)
    : delta_(std::move(delta)), epsilon_(std::move(epsilon)), delta_prime_(std::move(delta_prime)) {
  // Validates the ordering.
  ForallPruneParams::Create(delta_, epsilon_, delta_prime_);
}

SolverConfig::SolverConfig(Rational delta, Rational epsilon_factor, Rational delta_prime_factor)
    : SolverConfig(delta, Rational(delta * epsilon_factor), Rational(delta * delta_prime_factor),
                   true) {}

SolverConfig SolverConfig::FromValues(Rational delta, Rational epsilon, Rational delta_prime) {
  return SolverConfig(std::move(delta), std::move(epsilon), std::move(delta_prime), true);
}

ForallPruneParams SolverConfig::PruneParams() const {
  ForallPruneParams p = ForallPruneParams::Create(delta_, epsilon_, delta_prime_);
  p.local_opt = local_opt;
  p.local_opt_config = local_opt_config;
  p.inner_max_branchings = inner_max_branchings;
  p.inner_time_budget = inner_time_budget;
  p.max_rounds = max_ce_rounds;
  p.progress = fixedpoint;
  p.width_floor = width_floor;
  return p;
}

std::size_t PickBranchVariable(const Box& box, BranchRule rule, double width_floor,
                               std::size_t* next) {
  const std::size_t n = box.size();
  auto splittable = [&](std::size_t i) {
    return box[i].width() >= width_floor && box.IsBisectable(i);
  };
  if (rule == BranchRule::kRoundRobin) {
    const std::size_t start = next ? *next % std::max<std::size_t>(n, 1) : 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (splittable(i)) {
        if (next) *next = i + 1;
        return i;
      }
    }
    throw UnbranchableError("no component can be bisected");
  }
  std::size_t best = n;
  double best_width = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!splittable(i)) continue;
    const double w = box[i].width();
    if (w > best_width) {
      best = i;
      best_width = w;
    }
  }
  if (best == n) throw UnbranchableError("no component can be bisected");
  return best;
}

BranchAndPrune::BranchAndPrune(std::shared_ptr<const VariableSet> vars,
                               const CnfForallFormula& formula,
                               std::vector<std::unique_ptr<ForallPruner>> pruners,
                               SearchOptions options)
    : vars_(std::move(vars)),
      options_(std::move(options)),
      neg_delta_(-ToDoubleDown(options_.delta)),
      pruners_(std::move(pruners)) {
  for (std::size_t i = 0; i < formula.clauses.size(); ++i) {
    const ForallClause& c = formula.clauses[i];
    if (c.is_ground()) {
      ground_index_.push_back(i);
      ground_.push_back(std::make_unique<ClauseContractor>(c.disjuncts, *vars_));
      std::vector<Tape> tapes;
      for (const AtomicConstraint& d : c.disjuncts) tapes.emplace_back(d.lhs, *vars_);
      ground_tapes_.push_back(std::move(tapes));
    } else {
      universal_index_.push_back(i);
    }
  }
  if (universal_index_.size() != pruners_.size()) {
    throw std::invalid_argument("one pruner is required per forall-clause");
  }
  for (auto& g : ground_) ops_.push_back(g.get());
  for (auto& p : pruners_) ops_.push_back(p.get());
}

BranchAndPrune::~BranchAndPrune() = default;

bool BranchAndPrune::Certify(const Box& box, bool at_floor,
                             std::vector<ClauseCertificate>* certificates) {
  std::vector<ClauseCertificate> certs;
  Box probe = box;
  if (at_floor) {
    const std::vector<double> mid = box.Midpoint();
    for (std::size_t i = 0; i < mid.size(); ++i) probe[i] = Interval::Point(mid[i]);
  }
  for (std::size_t j = 0; j < ground_.size(); ++j) {
    bool ok = false;
    for (std::size_t k = 0; k < ground_tapes_[j].size() && !ok; ++k) {
      const Interval v = ground_tapes_[j][k].Evaluate(probe);
      if (v.is_empty()) continue;
      const double bound = at_floor ? v.hi() : v.lo();
      if (bound >= neg_delta_) {
        ok = true;
        certs.push_back({ground_index_[j], false, static_cast<int>(k), v.lo()});
      }
    }
    if (!ok) return false;
  }
  for (std::size_t j = 0; j < pruners_.size(); ++j) {
    if (pruners_[j]->last_status() != ForallPruneStatus::kNoCounterexample) return false;
    certs.push_back({universal_index_[j], true, -1, 0});
  }
  if (certificates) *certificates = std::move(certs);
  return true;
}

double BranchAndPrune::Score(const Box& box) const {
  double score = Interval::kInf;
  for (const auto& tapes : ground_tapes_) {
    double best = -Interval::kInf;
    for (const Tape& t : tapes) {
      const Interval v = t.Evaluate(box);
      if (!v.is_empty()) best = std::max(best, v.hi());
    }
    score = std::min(score, best);
  }
  return score;
}

std::optional<Box> BranchAndPrune::PointWitness(const Box& box) const {
  if (!pruners_.empty()) return std::nullopt;
  const std::vector<double> mid = box.Midpoint();
  Box point = box;
  for (std::size_t i = 0; i < mid.size(); ++i) point[i] = Interval::Point(mid[i]);
  for (const auto& tapes : ground_tapes_) {
    bool ok = false;
    for (const Tape& t : tapes) {
      const Interval v = t.Evaluate(point);
      if (!v.is_empty() && v.lo() >= neg_delta_) {
        ok = true;
        break;
      }
    }
    if (!ok) return std::nullopt;
  }
  return point;
}

SolveResult BranchAndPrune::Run(const Box& initial) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  std::vector<ForallPruneStats> before;
  for (const auto& p : pruners_) before.push_back(p->stats());

  SolveResult result;
  result.box = initial;
  SolverStats& stats = result.stats;
  auto finish = [&](Verdict v) {
    result.verdict = v;
    for (std::size_t i = 0; i < pruners_.size(); ++i) {
      const ForallPruneStats& now = pruners_[i]->stats();
      stats.counterexamples += now.counterexamples - before[i].counterexamples;
      stats.checked_counterexamples +=
          now.checked_counterexamples - before[i].checked_counterexamples;
      stats.inner_branchings += now.inner_branchings - before[i].inner_branchings;
      stats.inner_exhausted += now.inner_exhausted - before[i].inner_exhausted;
      stats.localopt_calls += now.localopt_calls - before[i].localopt_calls;
      stats.localopt_improved += now.localopt_improved - before[i].localopt_improved;
    }
    stats.seconds = elapsed();
    return result;
  };

  bool discarded_uncertain = false;
  // Pending boxes. Best-first keeps a heap on (score, -sequence) so equal
  // scores pop in insertion order.
  struct Pending {
    double score;
    std::int64_t seq;
    Box box;
  };
  auto less = [](const Pending& a, const Pending& b) {
    return a.score < b.score || (a.score == b.score && a.seq > b.seq);
  };
  std::deque<Pending> pending;
  std::int64_t seq = 0;
  auto push = [&](Box b) {
    const double score = options_.order == SearchOrder::kBestFirst ? Score(b) : 0;
    pending.push_back({std::isnan(score) ? -Interval::kInf : score, seq++, std::move(b)});
    if (options_.order == SearchOrder::kBestFirst) {
      std::push_heap(pending.begin(), pending.end(), less);
    }
  };
  auto pop = [&] {
    Box b;
    switch (options_.order) {
      case SearchOrder::kDepthFirst:
        b = std::move(pending.back().box);
        pending.pop_back();
        break;
      case SearchOrder::kBreadthFirst:
        b = std::move(pending.front().box);
        pending.pop_front();
        break;
      case SearchOrder::kBestFirst:
        std::pop_heap(pending.begin(), pending.end(), less);
        b = std::move(pending.back().box);
        pending.pop_back();
        break;
    }
    return b;
  };
  push(initial);
  while (!pending.empty()) {
    if (stats.branchings >= options_.max_branchings) {
      result.note = "branching budget exhausted";
      return finish(Verdict::kUnknown);
    }
    if (options_.time_budget > 0 && elapsed() > options_.time_budget) {
      result.note = "time budget exhausted";
      return finish(Verdict::kUnknown);
    }
    Box box = pop();
    ++stats.boxes_processed;
    if (box.is_empty()) continue;

    FixedpointStats fs;
    box = Fixedpoint(ops_, std::move(box), options_.fixedpoint, &fs);
    stats.prune_rounds += fs.rounds;
    if (box.is_empty()) continue;

    if (Certify(box, false, &result.certificates)) {
      result.box = box;
      return finish(Verdict::kDeltaSat);
    }
    if (options_.accept_point_witness) {
      if (std::optional<Box> point = PointWitness(box)) {
        Certify(*point, false, &result.certificates);
        result.box = std::move(*point);
        return finish(Verdict::kDeltaSat);
      }
    }
    std::size_t i = 0;
    try {
      i = PickBranchVariable(box, options_.branch_rule, options_.width_floor, &round_robin_next_);
    } catch (const UnbranchableError&) {
      if (Certify(box, true, &result.certificates)) {
        result.box = box;
        return finish(Verdict::kDeltaSat);
      }
      ++stats.floor_discards;
      for (const auto& p : pruners_) {
        if (p->last_status() == ForallPruneStatus::kExhausted) discarded_uncertain = true;
      }
      continue;
    }
    auto [lower, upper] = box.Bisect(i);
    ++stats.branchings;
    if (options_.order == SearchOrder::kDepthFirst) {
      push(std::move(upper));
      push(std::move(lower));
    } else {
      push(std::move(lower));
      push(std::move(upper));
    }
  }
  result.certificates.clear();
  if (discarded_uncertain) {
    result.note = "counterexample search exhausted on a discarded box";
    return finish(Verdict::kUnknown);
  }
  return finish(Verdict::kUnsat);
}

namespace {

SearchOptions OptionsFrom(const SolverConfig& config) {
  SearchOptions o;
  o.delta = config.delta();
  o.width_floor = config.width_floor;
  o.branch_rule = config.branch_rule;
  o.order = config.order;
  o.max_branchings = config.max_branchings;
  o.time_budget = config.time_budget;
  o.fixedpoint = config.fixedpoint;
  return o;
}

}  // namespace

SolveResult Solve(const CnfForallFormula& formula, const Box& initial,
                  const SolverConfig& config) {
  std::vector<std::unique_ptr<ForallPruner>> pruners;
  for (const ForallClause& c : formula.clauses) {
    if (!c.is_ground()) {
      pruners.push_back(std::make_unique<ForallPruner>(c, initial.vars(), config.PruneParams()));
    }
  }
  BranchAndPrune engine(initial.vars(), formula, std::move(pruners), OptionsFrom(config));
  return engine.Run(initial);
}

bool CertifyBox(const Box& box, const CnfForallFormula& formula, const SolverConfig& config,
                std::vector<ClauseCertificate>* certificates) {
  if (box.is_empty()) return false;
  const double neg_delta = -ToDoubleDown(config.delta());
  std::vector<ClauseCertificate> certs;
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const ForallClause& c = formula.clauses[j];
    if (c.is_ground()) {
      bool ok = false;
      for (std::size_t k = 0; k < c.disjuncts.size() && !ok; ++k) {
        const Interval v = EvaluateInterval(c.disjuncts[k].lhs, box);
        if (!v.is_empty() && v.lo() >= neg_delta) {
          ok = true;
          certs.push_back({j, false, static_cast<int>(k), v.lo()});
        }
      }
      if (!ok) return false;
    } else {
      ForallPruner pruner(c, box.vars(), config.PruneParams());
      bool exhausted = false;
      if (pruner.FindCounterexample(box, &exhausted) || exhausted) return false;
      certs.push_back({j, true, -1, 0});
    }
  }
  if (certificates) *certificates = std::move(certs);
  return true;
}

}  // namespace dforall

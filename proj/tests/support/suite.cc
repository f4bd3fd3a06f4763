#include "suite.h"

#include <random>
#include <sstream>

#include "dforall/frontend.h"
#include "oracle.h"

namespace dforall::testing {

namespace {

// Every disjunct needs a margin m: points meeting this on a fine y-grid are
// exact solutions for the slopes the generator produces.
CnfForallFormula WithMargin(const CnfForallFormula& f, const Rational& m) {
  CnfForallFormula out;
  for (const ForallClause& c : f.clauses) {
    ForallClause k{c.bound, {}};
    for (const AtomicConstraint& d : c.disjuncts) {
      k.disjuncts.push_back({d.lhs - Expr::Constant(m), Relation::kGeq});
    }
    out.clauses.push_back(std::move(k));
  }
  return out;
}

std::size_t MaxBound(const CnfForallFormula& f) {
  std::size_t n = 0;
  for (const ForallClause& c : f.clauses) n = std::max(n, c.bound.size());
  return n;
}

std::optional<std::vector<double>> RobustSolution(const CnfForallFormula& f,
                                                  const std::vector<std::string>& names,
                                                  const Box& box, int n_x) {
  const CnfForallFormula strong = WithMargin(f, Rational(1, 20));
  const GridOracle coarse(strong, names, 16);
  const GridOracle fine(strong, names, MaxBound(f) >= 2 ? 150 : 500);
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < box.size(); ++i) axes.push_back(Grid(box[i].lo(), box[i].hi(), n_x));
  std::vector<std::size_t> idx(box.size(), 0);
  while (true) {
    std::vector<double> x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) x[i] = axes[i][idx[i]];
    if (coarse.Holds(x) && fine.Holds(x)) return x;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == idx.size()) return std::nullopt;
  }
}

std::string Point(const std::vector<double>& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

SuiteOutcome RunOracleSuite(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  SuiteOutcome out;
  for (int i = 0; i < options.problems; ++i) {
    const int num_free = 1 + i % 2;
    const int num_bound = (i / 2) % 3;
    const std::string text = RandomDocument(rng, num_free, num_bound);
    const Problem p = Parse(text);
    const CnfForallFormula f = Normalize(p);
    SolverConfig config(options.delta);
    config.time_budget = options.time_budget;
    const SolveResult r = Solve(f, p.InitialBox(), config);
    ++out.problems;
    if (options.compare_orders) {
      SolverConfig bfs = config;
      bfs.order = SearchOrder::kBreadthFirst;
      const SolveResult other = Solve(f, p.InitialBox(), bfs);
      if (r.verdict != Verdict::kUnknown && other.verdict != Verdict::kUnknown &&
          r.verdict != other.verdict) {
        ++out.order_mismatches;
        out.failures.push_back("problem " + std::to_string(i) + ": depth-first " +
                               ToString(r.verdict) + ", breadth-first " + ToString(other.verdict) +
                               "\n" + text);
      }
    }
    switch (r.verdict) {
      case Verdict::kDeltaSat: {
        ++out.delta_sat;
        const GridOracle weak(Weaken(f, options.delta), p.VarNames(), options.witness_grid);
        const std::vector<double> mid = r.box.Midpoint();
        if (!weak.Holds(mid)) {
          ++out.bad_witnesses;
          out.failures.push_back("problem " + std::to_string(i) + ": witness " + Point(mid) +
                                 " violates the weakened formula\n" + text);
        }
        break;
      }
      case Verdict::kUnsat: {
        ++out.unsat;
        const auto x = RobustSolution(f, p.VarNames(), p.InitialBox(), options.unsat_grid);
        if (x) {
          ++out.bad_unsat;
          out.failures.push_back("problem " + std::to_string(i) + ": unsat but " + Point(*x) +
                                 " is a solution\n" + text);
        }
        break;
      }
      case Verdict::kUnknown:
        ++out.unknown;
        break;
    }
  }
  return out;
}

}  // namespace dforall::testing

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dforall/box.h"
#include "dforall/tape.h"

namespace dforall {

/// Stopping criteria for one local refinement.
struct LocalOptConfig {
  double abs_ftol{1e-6};
  double rel_ftol{1e-6};
  int max_evals{100};
  /// Wall-clock seconds; checked between evaluations.
  double time_budget{1e-3};
};

struct LocalOptResult {
  std::vector<double> point;
  double value{0};
  int evals{0};
  bool improved{false};
};

using Objective = std::function<double(std::span<const double>)>;

/// Bound-constrained Nelder-Mead. Every probe is clipped into domain; NaN
/// objective values count as +inf. The returned point is never worse than
/// start. The initial simplex steps 5% of each component width.
LocalOptResult NelderMead(const Objective& objective, std::span<const double> start,
                          const Box& domain, const LocalOptConfig& config);

/// Moves the counterexample y = b so that it violates the clause body more
/// strongly at x = a: minimizes max_i f_i(a, y) over y in y_domain. The
/// disjunct tapes are compiled over the joint variables (x..., y...).
LocalOptResult RefineCounterexample(std::span<const double> a, std::span<const double> b,
                                    std::span<const Tape> disjuncts, const Box& y_domain,
                                    const LocalOptConfig& config);

}  // namespace dforall

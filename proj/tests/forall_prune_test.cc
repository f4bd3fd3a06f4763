#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dforall/forall_prune.h"
#include "dforall/frontend.h"
#include "support/oracle.h"

namespace dforall {
namespace {

ForallPruneParams DefaultParams() {
  return ForallPruneParams::Create(Rational(1, 100), Rational(99, 10000), Rational(98, 10000));
}

const Expr kX = Expr::Variable("x");
const Expr kY = Expr::Variable("y");

ForallClause Clause(Expr lhs) {
  return ForallClause{{{"y", Rational(0), Rational(1)}}, {{std::move(lhs), Relation::kGeq}}};
}

Box XBox(double lo, double hi) { return Box({"x"}, {Interval(lo, hi)}); }

TEST(ForallPruneParamsTest, Ordering) {
  EXPECT_NO_THROW(DefaultParams());
  EXPECT_THROW(ForallPruneParams::Create(Rational(1), Rational(1), Rational(1, 2)),
               std::invalid_argument);
  EXPECT_THROW(ForallPruneParams::Create(Rational(1), Rational(1, 2), Rational(1, 2)),
               std::invalid_argument);
  EXPECT_THROW(ForallPruneParams::Create(Rational(1), Rational(1, 2), Rational(0)),
               std::invalid_argument);
}

TEST(FindCounterexampleTest, WidelySatisfiableQuery) {
  const ForallClause c = Clause(kX - kY);
  ForallPruner pruner(c, XBox(0, 0.5).vars(), DefaultParams());
  const auto ce = pruner.FindCounterexample(XBox(0, 0.5));
  ASSERT_TRUE(ce.has_value());
  ASSERT_EQ(ce->y.size(), 1u);
  EXPECT_GE(ce->y[0], 0.49);
  EXPECT_LE(ce->y[0], 1);
  EXPECT_LE(pruner.BodyValue(ce->x, ce->y), -0.0099 + 0.0098);
}

TEST(FindCounterexampleTest, SumOfSquaresHasNone) {
  const ForallClause c = Clause(pow(kX, 2) + pow(kY, 2));
  EXPECT_FALSE(FindCounterexample(XBox(-1, 1), c, DefaultParams()).has_value());
  EXPECT_FALSE(FindCounterexample(XBox(3, 4), c, DefaultParams()).has_value());
}

TEST(FindCounterexampleTest, FalseEverywhere) {
  const ForallClause c = Clause(Expr::Constant(-1) - pow(kX, 2));
  const auto ce = FindCounterexample(XBox(0, 1), c, DefaultParams());
  ASSERT_TRUE(ce.has_value());
  EXPECT_GE(ce->y[0], 0);
  EXPECT_LE(ce->y[0], 1);
}

TEST(PruneForallTest, ConvergesOnUpperEnd) {
  ForallPruneStatus status;
  const Box b = PruneForall(XBox(0, 1), Clause(kX - kY), DefaultParams(), &status);
  ASSERT_FALSE(b.is_empty());
  EXPECT_GE(b[0].lo(), 1 - 0.01);
  EXPECT_EQ(b[0].hi(), 1);
  EXPECT_GT(b[0].lo(), 1 - 0.0099);
}

TEST(PruneForallTest, ValidClauseLeavesBoxUnchanged) {
  ForallPruneStatus status;
  const Box b = PruneForall(XBox(-1, 1), Clause(pow(kX, 2) + pow(kY, 2)), DefaultParams(), &status);
  EXPECT_EQ(b, XBox(-1, 1));
  EXPECT_EQ(status, ForallPruneStatus::kNoCounterexample);
}

TEST(PruneForallTest, FalseClauseEmptiesBox) {
  ForallPruneStatus status;
  const Box b = PruneForall(XBox(0, 1), Clause(Expr::Constant(-1) - pow(kX, 2)), DefaultParams(),
                            &status);
  EXPECT_TRUE(b.is_empty());
  EXPECT_EQ(status, ForallPruneStatus::kEmptied);
}

TEST(PruneForallTest, DisjunctionTakesHull) {
  // forall y in [0, 1]: x - y >= 0 or -x - 1 + y >= 0 holds for x >= 1 and x <= -1 + 0.
  const ForallClause c{{{"y", Rational(0), Rational(1)}},
                       {{kX - kY, Relation::kGeq}, {-kX - Expr::Constant(1) + kY, Relation::kGeq}}};
  const Box b = PruneForall(XBox(-2, 2), c, DefaultParams());
  ASSERT_FALSE(b.is_empty());
  EXPECT_TRUE(b.Contains(std::vector<double>{-1.5}));
  EXPECT_TRUE(b.Contains(std::vector<double>{1.5}));
}

TEST(PruneForallTest, BoundNameClashRejected) {
  const ForallClause c{{{"x", Rational(0), Rational(1)}}, {{kX, Relation::kGeq}}};
  EXPECT_THROW(ForallPruner(c, XBox(0, 1).vars(), DefaultParams()), std::invalid_argument);
}

// Universal clauses of random one-variable documents with the bound variable
// y over [-1, 1].
std::vector<ForallClause> RandomUniversalClauses(std::mt19937_64& rng, int count) {
  std::vector<ForallClause> out;
  while (static_cast<int>(out.size()) < count) {
    const CnfForallFormula f = Normalize(Parse(testing::RandomDocument(rng, 1, 1)));
    for (const ForallClause& c : f.clauses) {
      if (!c.is_ground()) out.push_back(c);
    }
  }
  out.resize(count);
  return out;
}

// Weakening with a negative amount: every disjunct needs a margin m.
ForallClause WithMargin(const ForallClause& c, const Rational& m) {
  ForallClause out{c.bound, {}};
  for (const AtomicConstraint& d : c.disjuncts) {
    out.disjuncts.push_back({d.lhs - Expr::Constant(m), Relation::kGeq});
  }
  return out;
}

TEST(PruneForallPropertyTest, KeepsGridSolutions) {
  std::mt19937_64 rng(41);
  int solutions = 0;
  int nonempty = 0;
  for (const ForallClause& c : RandomUniversalClauses(rng, 60)) {
    // Points meeting the clause with margin 0.05 on a 401-point y-grid are
    // exact solutions: each term has slope at most ~16 on [-1, 1].
    const testing::GridOracle robust(CnfForallFormula{{WithMargin(c, Rational(1, 20))}}, {"x"},
                                     401);
    const Box initial = XBox(-2, 2);
    ForallPruner pruner(c, initial.vars(), DefaultParams());
    Box pruned = initial;
    pruner.Prune(&pruned);
    ASSERT_TRUE(pruned.is_subset_of(initial));
    if (!pruned.is_empty()) ++nonempty;
    for (double x : testing::Grid(-2, 2, 200)) {
      if (!robust.Holds({x})) continue;
      ++solutions;
      ASSERT_TRUE(!pruned.is_empty() && pruned.Contains(std::vector<double>{x}))
          << c << " lost x = " << x << ", pruned to " << pruned;
    }
    EXPECT_EQ(pruner.stats().checked_counterexamples, pruner.stats().counterexamples);
  }
  EXPECT_GT(solutions, 500);
  EXPECT_GT(nonempty, 10);
}

TEST(PruneForallPropertyTest, RepeatedPruningIsMonotone) {
  std::mt19937_64 rng(43);
  for (const ForallClause& c : RandomUniversalClauses(rng, 40)) {
    ForallPruner pruner(c, XBox(-2, 2).vars(), DefaultParams());
    Box box = XBox(-2, 2);
    for (int i = 0; i < 3; ++i) {
      const Box before = box;
      pruner.Prune(&box);
      ASSERT_TRUE(box.is_subset_of(before)) << c;
      if (box.is_empty()) break;
    }
  }
}

TEST(PruneForallPropertyTest, CounterexamplesAreGenuine) {
  std::mt19937_64 rng(47);
  for (const ForallClause& c : RandomUniversalClauses(rng, 40)) {
    ForallPruner pruner(c, XBox(-2, 2).vars(), DefaultParams());
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 5; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const auto ce = pruner.FindCounterexample(XBox(a, b));
      if (!ce) continue;
      EXPECT_LT(pruner.BodyValue(ce->x, ce->y), 0) << c;
      EXPECT_TRUE(XBox(a, b).Contains(ce->x));
    }
    EXPECT_EQ(pruner.stats().checked_counterexamples, pruner.stats().counterexamples);
  }
}

// Minimization encoding of x^2 on [-1, 1]: forall y in [-1, 1]. y^2 - x^2 >= 0.
ForallClause SquareMinClause() {
  return ForallClause{{{"y", Rational(-1), Rational(1)}},
                      {{pow(kY, 2) - pow(kX, 2), Relation::kGeq}}};
}

TEST(MisconfigurationTest, ZeroEpsilonGivesSpuriousCounterexample) {
  // Near the minimum the encoding weakened by delta / 2 holds on the whole
  // box, so every counterexample is spurious. Products keep the enclosures
  // loose enough that propagation alone cannot refute the query.
  const Rational delta(1, 100);
  const ForallClause c{{{"y", Rational(-1), Rational(1)}},
                       {{kY * kY - kX * kX + Expr::Constant(delta / 2), Relation::kGeq}}};
  ForallPruneParams bad = ForallPruneParams::Unchecked(delta, Rational(0), delta);
  bad.local_opt = false;
  ForallPruner pruner(c, XBox(-0.001, 0.001).vars(), bad);
  const auto ce = pruner.FindCounterexample(XBox(-0.001, 0.001));
  ASSERT_TRUE(ce.has_value());
  EXPECT_GT(pruner.BodyValue(ce->x, ce->y), 0);
  Box box = XBox(-0.001, 0.001);
  pruner.Prune(&box);
  EXPECT_EQ(box, XBox(-0.001, 0.001));
  EXPECT_EQ(pruner.last_status(), ForallPruneStatus::kStalled);

  ForallPruner good(c, XBox(-0.001, 0.001).vars(), DefaultParams());
  EXPECT_FALSE(good.FindCounterexample(XBox(-0.001, 0.001)).has_value());
}

TEST(MisconfigurationTest, DefaultParametersMakeProgressOrStop) {
  ForallPruner pruner(SquareMinClause(), XBox(-1, 1).vars(), DefaultParams());
  Box small = XBox(-0.001, 0.001);
  pruner.Prune(&small);
  EXPECT_EQ(small, XBox(-0.001, 0.001));
  EXPECT_EQ(pruner.last_status(), ForallPruneStatus::kNoCounterexample);

  Box box = XBox(-1, 1);
  for (int call = 0; call < 20 && !box.is_empty(); ++call) {
    const Box before = box;
    const std::int64_t ces = pruner.stats().counterexamples;
    pruner.Prune(&box);
    if (pruner.stats().counterexamples > ces) {
      EXPECT_TRUE(box.is_subset_of(before));
      EXPECT_NE(box, before);
    }
    if (pruner.last_status() == ForallPruneStatus::kNoCounterexample) break;
  }
  EXPECT_EQ(pruner.last_status(), ForallPruneStatus::kNoCounterexample);
  EXPECT_LE(box[0].width(), 2 * std::sqrt(0.01));
  EXPECT_EQ(pruner.stats().checked_counterexamples, pruner.stats().counterexamples);
}

TEST(ForallPrunerTest, InnerBudgetExhaustionIsReported) {
  ForallPruneParams params = DefaultParams();
  params.inner_max_branchings = 1;
  // Counterexamples need x^2 >= y^2 + 0.0099, found only after branching.
  ForallPruner pruner(SquareMinClause(), XBox(-1, 1).vars(), params);
  bool exhausted = false;
  const auto ce = pruner.FindCounterexample(XBox(-1, 1), &exhausted);
  if (!ce) {
    EXPECT_TRUE(exhausted);
    Box box = XBox(-1, 1);
    pruner.Prune(&box);
    EXPECT_EQ(pruner.last_status(), ForallPruneStatus::kExhausted);
    EXPECT_EQ(box, XBox(-1, 1));
  }
}

}  // namespace
}  // namespace dforall

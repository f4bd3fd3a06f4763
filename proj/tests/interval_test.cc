#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "dforall/box.h"
#include "dforall/tape.h"
#include "support/oracle.h"

namespace dforall {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using testing::RandomRichExpr;

const double kPi = 3.141592653589793;

Box Box2(Interval x, Interval y) { return Box({"x", "y"}, {x, y}); }

TEST(IntervalTest, Sum) {
  const Expr e = Expr::Variable("x") + Expr::Variable("y");
  const Interval r = EvaluateInterval(e, Box2({1, 2}, {3, 4}));
  EXPECT_EQ(r, Interval(4, 6));
}

TEST(IntervalTest, SinOverHalfPeriod) {
  const Interval r = Sin(Interval(0, kPi));
  EXPECT_LE(r.lo(), 0);
  EXPECT_GE(r.lo(), -1e-15);
  EXPECT_EQ(r.hi(), 1);
}

TEST(IntervalTest, SquareIsDependencyAware) {
  const Expr x = Expr::Variable("x");
  const Box b({"x"}, {Interval(-1, 2)});
  EXPECT_EQ(EvaluateInterval(pow(x, 2), b), Interval(0, 4));
  EXPECT_EQ(EvaluateInterval(x * x, b), Interval(-2, 4));
}

TEST(IntervalTest, PartialFunctions) {
  EXPECT_TRUE(Log(Interval(-2, -1)).is_empty());
  EXPECT_TRUE(Sqrt(Interval(-2, -1)).is_empty());
  EXPECT_EQ(Sqrt(Interval(-1, 4)).lo(), 0);
  EXPECT_EQ(Interval(1, 2) / Interval(-1, 1), Interval::Entire());
  EXPECT_TRUE((Interval(1, 2) / Interval(0, 0)).is_empty());
  EXPECT_TRUE(Asin(Interval(2, 3)).is_empty());
}

TEST(IntervalTest, IntersectAndHull) {
  EXPECT_EQ(Intersect(Interval(0, 2), Interval(1, 3)), Interval(1, 2));
  EXPECT_TRUE(Intersect(Interval(0, 1), Interval(2, 3)).is_empty());
  EXPECT_EQ(Intersect(Interval(0, 1), Interval(0, 1)), Interval(0, 1));
  EXPECT_EQ(Hull(Interval(0, 1), Interval::Empty()), Interval(0, 1));
}

TEST(BoxTest, Bisect) {
  const Box b({"x"}, {Interval(0, 2)});
  const auto [l, r] = b.Bisect(0);
  EXPECT_EQ(l[0], Interval(0, 1));
  EXPECT_EQ(r[0], Interval(1, 2));
}

TEST(BoxTest, BisectDegenerateIsUnbranchable) {
  const Box b = Box2({-1, 1}, {5, 5});
  EXPECT_FALSE(b.IsBisectable(1));
  EXPECT_THROW(b.Bisect(1), UnbranchableError);
  const double v = 1.0;
  const Box tight({"x"}, {Interval(v, std::nextafter(v, 2.0))});
  EXPECT_THROW(tight.Bisect(0), UnbranchableError);
}

TEST(BoxTest, BisectPreservesPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  const Box b = Box2({-3, 1.5}, {0.25, 7});
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> p{-3 + 4.5 * u(rng), 0.25 + 6.75 * u(rng)};
    const std::size_t axis = i % 2;
    const auto [l, r] = b.Bisect(axis);
    const int in = l.Contains(p) + r.Contains(p);
    if (p[axis] == l[axis].hi()) {
      EXPECT_EQ(in, 2);
    } else {
      EXPECT_EQ(in, 1);
    }
  }
}

TEST(BoxTest, Hull) {
  const Box a = Box2({0, 1}, {0, 1});
  const Box b = Box2({2, 3}, {0, 2});
  EXPECT_EQ(Hull({a, b}), Box2({0, 3}, {0, 2}));
  Box empty = a;
  empty.set_empty();
  EXPECT_EQ(Hull({a, empty}), a);
  EXPECT_EQ(Hull({a}), a);
  EXPECT_TRUE(Hull({empty, empty}).is_empty());
  EXPECT_THROW(Hull({a, Box({"z"}, {Interval(0, 1)})}), std::invalid_argument);
}

TEST(BoxTest, Intersect) {
  EXPECT_EQ(Intersect(Box({"x"}, {Interval(0, 2)}), Box({"x"}, {Interval(1, 3)})),
            Box({"x"}, {Interval(1, 2)}));
  EXPECT_TRUE(Intersect(Box({"x"}, {Interval(0, 1)}), Box({"x"}, {Interval(2, 3)})).is_empty());
  const Box a = Box2({0, 1}, {-1, 4});
  EXPECT_EQ(Intersect(a, a), a);
  EXPECT_THROW(Intersect(a, Box({"x"}, {Interval(0, 1)})), std::invalid_argument);
}

TEST(BoxTest, MaxWidth) {
  EXPECT_EQ(Box2({0, 1}, {-1, 4}).MaxWidth(), 5);
}

Box RandomBox(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  std::uniform_real_distribution<double> center(-3, 3);
  std::uniform_real_distribution<double> radius(0, 1.5);
  std::vector<Interval> values;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const double c = center(rng);
    const double r = radius(rng);
    values.emplace_back(c - r, c + r);
  }
  return Box(vars, values);
}

std::vector<double> RandomPoint(std::mt19937_64& rng, const Box& b) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> p;
  for (std::size_t i = 0; i < b.size(); ++i) p.push_back(b[i].lo() + u(rng) * (b[i].hi() - b[i].lo()));
  return p;
}

TEST(IntervalPropertyTest, Containment) {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> vars{"x", "y"};
  const VariableSet set(vars);
  int checked = 0;
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Expr e = RandomRichExpr(rng, vars, 4);
    const Box b = RandomBox(rng, vars);
    const Tape tape(e, set);
    const Interval enclosure = tape.Evaluate(b);
    for (int attempt = 0; attempt < 20; ++attempt) {
      const std::vector<double> p = RandomPoint(rng, b);
      double v;
      try {
        v = e.Evaluate({{"x", p[0]}, {"y", p[1]}});
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(v)) continue;
      ++checked;
      if (!enclosure.contains(v)) {
        ++violations;
        ADD_FAILURE() << e << " over " << b << " at (" << p[0] << ", " << p[1] << ") = " << v
                      << " not in " << enclosure;
      }
      break;
    }
  }
  EXPECT_EQ(violations, 0);
  EXPECT_GT(checked, 7000);
}

TEST(IntervalPropertyTest, InclusionMonotonicity) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> vars{"x", "y"};
  const VariableSet set(vars);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 5000; ++trial) {
    const Expr e = RandomRichExpr(rng, vars, 4);
    const Box outer = RandomBox(rng, vars);
    std::vector<Interval> inner_values;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      double a = outer[i].lo() + u(rng) * outer[i].width();
      double b = outer[i].lo() + u(rng) * outer[i].width();
      if (a > b) std::swap(a, b);
      inner_values.emplace_back(a, std::fmin(b, outer[i].hi()));
    }
    const Box inner(vars, inner_values);
    const Tape tape(e, set);
    const Interval big = tape.Evaluate(outer);
    const Interval small = tape.Evaluate(inner);
    ASSERT_TRUE(small.is_subset_of(big)) << e << ": " << small << " vs " << big;
  }
}

// Endpoints never fall inside the exact image, checked in 50-digit arithmetic.
TEST(IntervalPropertyTest, OutwardRoundingAgainstHighPrecision) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mag(-20, 5);
  for (int trial = 0; trial < 3000; ++trial) {
    double a = std::pow(10.0, mag(rng));
    double b = std::pow(10.0, mag(rng));
    if (a > b) std::swap(a, b);
    const Interval x(a, b);
    const Interval e = Exp(Interval(std::log(a), std::log(b)));
    const Interval l = Log(x);
    const Interval s = Sqrt(x);
    const Big lo_in(std::log(a));
    const Big hi_in(std::log(b));
    EXPECT_LE(Big(e.lo()), boost::multiprecision::exp(lo_in));
    EXPECT_GE(Big(e.hi()), boost::multiprecision::exp(hi_in));
    EXPECT_LE(Big(l.lo()), boost::multiprecision::log(Big(a)));
    EXPECT_GE(Big(l.hi()), boost::multiprecision::log(Big(b)));
    EXPECT_LE(Big(s.lo()), boost::multiprecision::sqrt(Big(a)));
    EXPECT_GE(Big(s.hi()), boost::multiprecision::sqrt(Big(b)));
  }
}

TEST(IntervalPropertyTest, ArithmeticRoundsOutward) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = u(rng);
    const double b = u(rng);
    const Big ea(a);
    const Big eb(b);
    const Interval pa = Interval::Point(a);
    const Interval pb = Interval::Point(b);
    const Interval sum = pa + pb;
    const Interval diff = pa - pb;
    const Interval prod = pa * pb;
    const Interval quot = pa / pb;
    EXPECT_TRUE(Big(sum.lo()) <= ea + eb && ea + eb <= Big(sum.hi()));
    EXPECT_TRUE(Big(diff.lo()) <= ea - eb && ea - eb <= Big(diff.hi()));
    EXPECT_TRUE(Big(prod.lo()) <= ea * eb && ea * eb <= Big(prod.hi()));
    EXPECT_TRUE(Big(quot.lo()) <= ea / eb && ea / eb <= Big(quot.hi()));
  }
}

}  // namespace
}  // namespace dforall

#include "dforall/contractor.h"

#include <cmath>
#include <memory>

namespace dforall {

namespace {

constexpr double kInf = Interval::kInf;

// Widest argument for which the periodic inverses enumerate branches.
constexpr double kMaxPeriodicWidth = 64 * 3.141592653589793;

// Preimage of z under an even function restricted to x: r is the
// nonnegative branch.
Interval SymmetricPreimage(const Interval& x, const Interval& r) {
  return Hull(Intersect(x, r), Intersect(x, -r));
}

Interval SinPreimage(const Interval& x, const Interval& z) {
  const Interval zz = Intersect(z, Interval(-1, 1));
  if (zz.is_empty()) return zz;
  if (!x.is_bounded() || x.width() > kMaxPeriodicWidth) return x;
  const Interval a = Asin(zz);
  const Interval pi = Pi();
  Interval result;
  const double k_lo = std::floor(x.lo() / pi.lo()) - 1;
  const double k_hi = std::ceil(x.hi() / pi.lo()) + 1;
  for (double k = k_lo; k <= k_hi; k += 1) {
    const Interval shift = Interval::Point(k) * pi;
    const bool even = std::fmod(std::fabs(k), 2.0) == 0;
    const Interval seg = even ? shift + a : shift - a;
    result = Hull(result, Intersect(x, seg));
  }
  return result;
}

Interval CosPreimage(const Interval& x, const Interval& z) {
  const Interval zz = Intersect(z, Interval(-1, 1));
  if (zz.is_empty()) return zz;
  if (!x.is_bounded() || x.width() > kMaxPeriodicWidth) return x;
  const Interval c = Acos(zz);
  const Interval two_pi = Interval::Point(2) * Pi();
  Interval result;
  const double k_lo = std::floor(x.lo() / two_pi.lo()) - 1;
  const double k_hi = std::ceil(x.hi() / two_pi.lo()) + 1;
  for (double k = k_lo; k <= k_hi; k += 1) {
    const Interval shift = Interval::Point(k) * two_pi;
    result = Hull(result, Intersect(x, shift + c));
    result = Hull(result, Intersect(x, shift - c));
  }
  return result;
}

Interval TanPreimage(const Interval& x, const Interval& z) {
  if (z.is_empty()) return z;
  if (!x.is_bounded() || x.width() > kMaxPeriodicWidth) return x;
  const Interval t = Atan(z);
  const Interval pi = Pi();
  Interval result;
  const double k_lo = std::floor(x.lo() / pi.lo()) - 1;
  const double k_hi = std::ceil(x.hi() / pi.lo()) + 1;
  for (double k = k_lo; k <= k_hi; k += 1) {
    result = Hull(result, Intersect(x, Interval::Point(k) * pi + t));
  }
  return result;
}

// Preimage of z under w -> w^n (n >= 1) intersected with x.
Interval PowPreimage(const Interval& x, const Interval& z, int n) {
  if (n % 2 == 1) return Intersect(x, Root(z, n));
  const Interval zz = Intersect(z, Interval(0, kInf));
  if (zz.is_empty()) return zz;
  return SymmetricPreimage(x, Root(zz, n));
}

}  // namespace

bool BackwardPropagate(const Tape& tape, std::vector<Interval>* values, Box* box) {
  std::vector<Interval>& v = *values;
  for (int i = static_cast<int>(tape.size()) - 1; i >= 0; --i) {
    const Tape::Node& n = tape.node(i);
    const Interval z = v[i];
    if (z.is_empty()) return false;
    if (n.kind == ExprKind::kVariable) {
      (*box)[n.var] = Intersect((*box)[n.var], z);
      if ((*box)[n.var].is_empty()) return false;
      continue;
    }
    if (n.kind == ExprKind::kConstant) {
      if (Intersect(z, n.constant).is_empty()) return false;
      continue;
    }
    Interval& x = v[n.arg0];
    switch (n.kind) {
      case ExprKind::kNeg:
        x = Intersect(x, -z);
        break;
      case ExprKind::kAbs:
        x = SymmetricPreimage(x, Intersect(z, Interval(0, kInf)));
        break;
      case ExprKind::kSqrt:
        x = Intersect(x, Intersect(Sqr(Intersect(z, Interval(0, kInf))), Interval(0, kInf)));
        break;
      case ExprKind::kExp:
        x = Intersect(x, Log(z));
        break;
      case ExprKind::kLog:
        x = Intersect(x, Exp(z));
        break;
      case ExprKind::kSin:
        x = SinPreimage(x, z);
        break;
      case ExprKind::kCos:
        x = CosPreimage(x, z);
        break;
      case ExprKind::kTan:
        x = TanPreimage(x, z);
        break;
      case ExprKind::kAsin: {
        const double half_pi_hi = rounding::Up(Pi().hi() / 2);
        x = Intersect(x, Sin(Intersect(z, Interval(-half_pi_hi, half_pi_hi))));
        x = Intersect(x, Interval(-1, 1));
        break;
      }
      case ExprKind::kAcos:
        x = Intersect(x, Cos(Intersect(z, Interval(0, Pi().hi()))));
        x = Intersect(x, Interval(-1, 1));
        break;
      case ExprKind::kAtan: {
        const double half_pi_hi = rounding::Up(Pi().hi() / 2);
        x = Intersect(x, Tan(Intersect(z, Interval(-half_pi_hi, half_pi_hi))));
        break;
      }
      case ExprKind::kSinh:
        x = Intersect(x, Asinh(z));
        break;
      case ExprKind::kCosh: {
        const Interval r = Acosh(z);
        x = r.is_empty() ? r : SymmetricPreimage(x, r);
        break;
      }
      case ExprKind::kTanh:
        x = Intersect(x, Atanh(z));
        break;
      case ExprKind::kPow: {
        if (n.exponent > 0) {
          x = PowPreimage(x, z, n.exponent);
        } else {
          // z = 1 / x^m, so x^m lies in 1 / z.
          if (x.lo() == 0 && x.hi() == 0) return false;
          if (!z.contains_zero()) {
            x = PowPreimage(x, Interval::Point(1) / z, -n.exponent);
          }
        }
        break;
      }
      case ExprKind::kAdd: {
        Interval& y = v[n.arg1];
        x = Intersect(x, z - y);
        y = Intersect(y, z - x);
        break;
      }
      case ExprKind::kSub: {
        Interval& y = v[n.arg1];
        x = Intersect(x, z + y);
        y = Intersect(y, x - z);
        break;
      }
      case ExprKind::kMul: {
        Interval& y = v[n.arg1];
        if (!y.contains_zero()) {
          x = Intersect(x, z / y);
        } else if (y.lo() == 0 && y.hi() == 0 && !z.contains_zero()) {
          return false;
        }
        if (!x.contains_zero()) {
          y = Intersect(y, z / x);
        } else if (x.lo() == 0 && x.hi() == 0 && !z.contains_zero()) {
          return false;
        }
        break;
      }
      case ExprKind::kDiv: {
        Interval& y = v[n.arg1];
        if (y.lo() == 0 && y.hi() == 0) return false;
        x = Intersect(x, z * y);
        if (!z.contains_zero() && !x.is_empty()) {
          const Interval q = x / z;
          // x / z is Entire when x spans zero; skip then.
          y = Intersect(y, q);
        }
        break;
      }
      case ExprKind::kMin: {
        Interval& y = v[n.arg1];
        x = Intersect(x, Interval(z.lo(), kInf));
        y = Intersect(y, Interval(z.lo(), kInf));
        if (y.lo() > z.hi()) x = Intersect(x, z);
        if (x.lo() > z.hi()) y = Intersect(y, z);
        break;
      }
      case ExprKind::kMax: {
        Interval& y = v[n.arg1];
        x = Intersect(x, Interval(-kInf, z.hi()));
        y = Intersect(y, Interval(-kInf, z.hi()));
        if (y.hi() < z.lo()) x = Intersect(x, z);
        if (x.hi() < z.lo()) y = Intersect(y, z);
        break;
      }
      case ExprKind::kVariable:
      case ExprKind::kConstant:
        break;
    }
    if (x.is_empty()) return false;
    if (n.arg1 >= 0 && v[n.arg1].is_empty()) return false;
  }
  return true;
}

Contractor::Contractor(AtomicConstraint constraint, const VariableSet& vars)
    : constraint_(std::move(constraint)), tape_(constraint_.lhs, vars) {}

void Contractor::Prune(Box* box) {
  if (box->is_empty()) return;
  tape_.Forward(*box, &values_);
  // Strict and nonstrict atoms prune alike.
  values_.back() = Intersect(values_.back(), Interval(0, kInf));
  if (!BackwardPropagate(tape_, &values_, box)) box->set_empty();
}

ClauseContractor::ClauseContractor(const std::vector<AtomicConstraint>& disjuncts,
                                   const VariableSet& vars) {
  disjuncts_.reserve(disjuncts.size());
  for (const AtomicConstraint& c : disjuncts) disjuncts_.emplace_back(c, vars);
}

void ClauseContractor::Prune(Box* box) {
  if (box->is_empty()) return;
  if (disjuncts_.size() == 1) {
    disjuncts_.front().Prune(box);
    return;
  }
  Box hull = *box;
  hull.set_empty();
  for (Contractor& c : disjuncts_) {
    Box b = *box;
    c.Prune(&b);
    if (b.is_empty()) continue;
    for (std::size_t i = 0; i < b.size(); ++i) hull[i] = Hull(hull[i], b[i]);
  }
  *box = std::move(hull);
}

Box PruneAtom(const Box& box, const AtomicConstraint& c) {
  Contractor contractor(c, *box.vars());
  Box result = box;
  contractor.Prune(&result);
  return result;
}

bool Progressed(const Box& before, const Box& after, const FixedpointOptions& options) {
  for (std::size_t i = 0; i < before.size(); ++i) {
    const double w0 = before[i].width();
    const double w1 = after[i].width();
    if (std::isinf(w0)) {
      if (!std::isinf(w1)) return true;
      continue;
    }
    const double shrink = w0 - w1;
    if (shrink >= options.rel_progress * w0 && shrink >= options.abs_progress) return true;
  }
  return false;
}

Box Fixedpoint(std::span<PruningOperator* const> ops, Box box, const FixedpointOptions& options,
               FixedpointStats* stats) {
  FixedpointStats local;
  FixedpointStats& s = stats ? *stats : local;
  s = FixedpointStats{};
  if (ops.empty() || box.is_empty()) return box;
  while (true) {
    if (s.rounds >= options.max_rounds) {
      s.hit_round_cap = true;
      return box;
    }
    ++s.rounds;
    const Box before = box;
    for (PruningOperator* op : ops) {
      op->Prune(&box);
      if (box.is_empty()) {
        box.set_empty();
        return box;
      }
    }
    if (!Progressed(before, box, options)) return box;
  }
}

Box Fixedpoint(const std::vector<AtomicConstraint>& constraints, const Box& box,
               const FixedpointOptions& options, FixedpointStats* stats) {
  std::vector<std::unique_ptr<Contractor>> owned;
  std::vector<PruningOperator*> ops;
  for (const AtomicConstraint& c : constraints) {
    owned.push_back(std::make_unique<Contractor>(c, *box.vars()));
    ops.push_back(owned.back().get());
  }
  return Fixedpoint(ops, box, options, stats);
}

}  // namespace dforall

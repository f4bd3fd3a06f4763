#include "dforall/tape.h"

#include <algorithm>
#include <cmath>

namespace dforall {

Tape::Tape(const Expr& e, const VariableSet& vars) {
  std::vector<std::pair<const ExprNode*, int>> seen;
  Add(e, vars, &seen);
  std::sort(variables_.begin(), variables_.end());
  variables_.erase(std::unique(variables_.begin(), variables_.end()), variables_.end());
}

int Tape::Add(const Expr& e, const VariableSet& vars,
              std::vector<std::pair<const ExprNode*, int>>* seen) {
  for (const auto& [ptr, idx] : *seen) {
    if (ptr == e.id()) return idx;
  }
  Node node{e.kind()};
  switch (e.kind()) {
    case ExprKind::kVariable:
      node.var = vars.IndexOf(e.name());
      if (node.var < 0) {
        throw std::invalid_argument("variable '" + e.name() + "' is not in the box");
      }
      variables_.push_back(node.var);
      break;
    case ExprKind::kConstant:
      node.point_value = ToDouble(e.value());
      node.constant = Interval(ToDoubleDown(e.value()), ToDoubleUp(e.value()));
      break;
    case ExprKind::kPow:
      node.arg0 = Add(e.arg(0), vars, seen);
      node.exponent = e.exponent();
      break;
    default:
      node.arg0 = Add(e.arg(0), vars, seen);
      if (e.arity() == 2) node.arg1 = Add(e.arg(1), vars, seen);
      break;
  }
  nodes_.push_back(node);
  const int idx = static_cast<int>(nodes_.size()) - 1;
  seen->emplace_back(e.id(), idx);
  return idx;
}

Interval ApplyForward(const Tape::Node& node, const Interval& a, const Interval& b) {
  switch (node.kind) {
    case ExprKind::kNeg: return -a;
    case ExprKind::kAbs: return Abs(a);
    case ExprKind::kSqrt: return Sqrt(a);
    case ExprKind::kExp: return Exp(a);
    case ExprKind::kLog: return Log(a);
    case ExprKind::kSin: return Sin(a);
    case ExprKind::kCos: return Cos(a);
    case ExprKind::kTan: return Tan(a);
    case ExprKind::kAsin: return Asin(a);
    case ExprKind::kAcos: return Acos(a);
    case ExprKind::kAtan: return Atan(a);
    case ExprKind::kSinh: return Sinh(a);
    case ExprKind::kCosh: return Cosh(a);
    case ExprKind::kTanh: return Tanh(a);
    case ExprKind::kAdd: return a + b;
    case ExprKind::kSub: return a - b;
    case ExprKind::kMul: return a * b;
    case ExprKind::kDiv: return a / b;
    case ExprKind::kPow: return Pow(a, node.exponent);
    case ExprKind::kMin: return Min(a, b);
    case ExprKind::kMax: return Max(a, b);
    case ExprKind::kVariable:
    case ExprKind::kConstant:
      break;
  }
  return node.constant;
}

Interval Tape::Forward(const Box& box, std::vector<Interval>* values) const {
  values->resize(nodes_.size());
  std::vector<Interval>& v = *values;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::kVariable:
        v[i] = box[n.var];
        break;
      case ExprKind::kConstant:
        v[i] = n.constant;
        break;
      default:
        v[i] = ApplyForward(n, v[n.arg0], n.arg1 >= 0 ? v[n.arg1] : Interval::Empty());
        break;
    }
  }
  return v.back();
}

Interval Tape::Evaluate(const Box& box) const {
  std::vector<Interval> values;
  return Forward(box, &values);
}

double Tape::EvaluatePoint(std::span<const double> point) const {
  thread_local std::vector<double> v;
  v.resize(nodes_.size());
  const double nan = std::nan("");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const double a = n.arg0 >= 0 ? v[n.arg0] : 0.0;
    const double b = n.arg1 >= 0 ? v[n.arg1] : 0.0;
    double r = 0;
    switch (n.kind) {
      case ExprKind::kVariable: r = point[n.var]; break;
      case ExprKind::kConstant: r = n.point_value; break;
      case ExprKind::kNeg: r = -a; break;
      case ExprKind::kAbs: r = std::fabs(a); break;
      case ExprKind::kSqrt: r = a < 0 ? nan : std::sqrt(a); break;
      case ExprKind::kExp: r = std::exp(a); break;
      case ExprKind::kLog: r = a <= 0 ? nan : std::log(a); break;
      case ExprKind::kSin: r = std::sin(a); break;
      case ExprKind::kCos: r = std::cos(a); break;
      case ExprKind::kTan: r = std::tan(a); break;
      case ExprKind::kAsin: r = (a < -1 || a > 1) ? nan : std::asin(a); break;
      case ExprKind::kAcos: r = (a < -1 || a > 1) ? nan : std::acos(a); break;
      case ExprKind::kAtan: r = std::atan(a); break;
      case ExprKind::kSinh: r = std::sinh(a); break;
      case ExprKind::kCosh: r = std::cosh(a); break;
      case ExprKind::kTanh: r = std::tanh(a); break;
      case ExprKind::kAdd: r = a + b; break;
      case ExprKind::kSub: r = a - b; break;
      case ExprKind::kMul: r = a * b; break;
      case ExprKind::kDiv: r = b == 0 ? nan : a / b; break;
      case ExprKind::kPow: r = n.exponent < 0 && a == 0 ? nan : std::pow(a, n.exponent); break;
      case ExprKind::kMin: r = std::fmin(a, b); break;
      case ExprKind::kMax: r = std::fmax(a, b); break;
    }
    if (std::isnan(r)) return nan;
    v[i] = r;
  }
  return v.back();
}

Interval EvaluateInterval(const Expr& e, const Box& box) {
  return Tape(e, *box.vars()).Evaluate(box);
}

}  // namespace dforall

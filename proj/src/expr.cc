#include "dforall/expr.h"

#include <cmath>
#include <optional>
#include <sstream>

namespace dforall {

bool IsUnary(ExprKind kind) {
  return kind >= ExprKind::kNeg && kind <= ExprKind::kTanh;
}

bool IsBinary(ExprKind kind) {
  return kind >= ExprKind::kAdd && kind <= ExprKind::kMax;
}

const char* Symbol(ExprKind kind) {
  switch (kind) {
    case ExprKind::kVariable: return "var";
    case ExprKind::kConstant: return "const";
    case ExprKind::kNeg: return "-";
    case ExprKind::kAbs: return "abs";
    case ExprKind::kSqrt: return "sqrt";
    case ExprKind::kExp: return "exp";
    case ExprKind::kLog: return "log";
    case ExprKind::kSin: return "sin";
    case ExprKind::kCos: return "cos";
    case ExprKind::kTan: return "tan";
    case ExprKind::kAsin: return "asin";
    case ExprKind::kAcos: return "acos";
    case ExprKind::kAtan: return "atan";
    case ExprKind::kSinh: return "sinh";
    case ExprKind::kCosh: return "cosh";
    case ExprKind::kTanh: return "tanh";
    case ExprKind::kAdd: return "+";
    case ExprKind::kSub: return "-";
    case ExprKind::kMul: return "*";
    case ExprKind::kDiv: return "/";
    case ExprKind::kPow: return "^";
    case ExprKind::kMin: return "min";
    case ExprKind::kMax: return "max";
  }
  return "?";
}

Expr Expr::Variable(std::string name) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{ExprKind::kVariable, std::move(name), Rational{}, {}}));
}

Expr Expr::Constant(Rational value) {
  const double approx = ToDouble(value);
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{ExprKind::kConstant, {}, std::move(value), {}, approx}));
}

Expr Expr::Unary(ExprKind kind, Expr arg) {
  if (!IsUnary(kind)) throw std::invalid_argument("Expr::Unary: not a unary kind");
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{kind, {}, Rational{}, {std::move(arg)}}));
}

Expr Expr::Binary(ExprKind kind, Expr lhs, Expr rhs) {
  if (!IsBinary(kind)) throw std::invalid_argument("Expr::Binary: not a binary kind");
  if (kind == ExprKind::kPow) {
    if (!rhs.is_constant() || denominator(rhs.value()) != 1 || rhs.value() == 0 ||
        abs(rhs.value()) > 1024) {
      throw std::invalid_argument("exponent of ^ must be a nonzero integer constant");
    }
  }
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{kind, {}, Rational{}, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::Pow(Expr base, int exponent) {
  return Binary(ExprKind::kPow, std::move(base), Constant(Rational(exponent)));
}

ExprKind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
const Rational& Expr::value() const { return node_->value; }
int Expr::exponent() const { return node_->args.at(1).value().convert_to<int>(); }
std::size_t Expr::arity() const { return node_->args.size(); }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }

namespace {

void CollectVars(const Expr& e, std::set<std::string>* out) {
  if (e.is_variable()) {
    out->insert(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) CollectVars(e.arg(i), out);
}

double CheckedResult(double v, const char* fn) {
  if (std::isnan(v)) throw DomainError(std::string(fn) + ": argument outside domain");
  return v;
}

}  // namespace

std::set<std::string> Expr::FreeVars() const {
  std::set<std::string> vars;
  CollectVars(*this, &vars);
  return vars;
}

double Expr::Evaluate(const Environment& env) const {
  switch (kind()) {
    case ExprKind::kVariable: {
      const auto it = env.find(name());
      if (it == env.end()) throw std::out_of_range("unassigned variable '" + name() + "'");
      return it->second;
    }
    case ExprKind::kConstant:
      return node_->approx;
    case ExprKind::kPow: {
      const double a = arg(0).Evaluate(env);
      if (exponent() < 0 && a == 0) throw DomainError("negative power of zero");
      return std::pow(a, exponent());
    }
    default:
      break;
  }
  const double a = arg(0).Evaluate(env);
  switch (kind()) {
    case ExprKind::kNeg: return -a;
    case ExprKind::kAbs: return std::fabs(a);
    case ExprKind::kSqrt:
      if (a < 0) throw DomainError("sqrt of negative number");
      return std::sqrt(a);
    case ExprKind::kExp: return std::exp(a);
    case ExprKind::kLog:
      if (a <= 0) throw DomainError("log of nonpositive number");
      return std::log(a);
    case ExprKind::kSin: return std::sin(a);
    case ExprKind::kCos: return std::cos(a);
    case ExprKind::kTan: return CheckedResult(std::tan(a), "tan");
    case ExprKind::kAsin:
      if (a < -1 || a > 1) throw DomainError("asin outside [-1, 1]");
      return std::asin(a);
    case ExprKind::kAcos:
      if (a < -1 || a > 1) throw DomainError("acos outside [-1, 1]");
      return std::acos(a);
    case ExprKind::kAtan: return std::atan(a);
    case ExprKind::kSinh: return std::sinh(a);
    case ExprKind::kCosh: return std::cosh(a);
    case ExprKind::kTanh: return std::tanh(a);
    default:
      break;
  }
  const double b = arg(1).Evaluate(env);
  switch (kind()) {
    case ExprKind::kAdd: return a + b;
    case ExprKind::kSub: return a - b;
    case ExprKind::kMul: return a * b;
    case ExprKind::kDiv:
      if (b == 0) throw DomainError("division by zero");
      return a / b;
    case ExprKind::kMin: return std::fmin(a, b);
    case ExprKind::kMax: return std::fmax(a, b);
    default:
      break;
  }
  throw std::logic_error("Expr::Evaluate: unhandled kind");
}

bool Expr::EqualTo(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || arity() != other.arity()) return false;
  if (is_variable()) return name() == other.name();
  if (is_constant()) return value() == other.value();
  for (std::size_t i = 0; i < arity(); ++i) {
    if (!arg(i).EqualTo(other.arg(i))) return false;
  }
  return true;
}

std::string Expr::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kVariable: return os << e.name();
    case ExprKind::kConstant: return os << ToString(e.value());
    case ExprKind::kPow: return os << "(^ " << e.arg(0) << " " << e.exponent() << ")";
    default:
      break;
  }
  os << "(" << Symbol(e.kind());
  for (std::size_t i = 0; i < e.arity(); ++i) os << " " << e.arg(i);
  return os << ")";
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kAdd, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kSub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kMul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kDiv, a, b); }
Expr operator-(const Expr& a) { return Expr::Unary(ExprKind::kNeg, a); }
Expr pow(const Expr& base, int exponent) { return Expr::Pow(base, exponent); }
Expr abs(const Expr& e) { return Expr::Unary(ExprKind::kAbs, e); }
Expr sqrt(const Expr& e) { return Expr::Unary(ExprKind::kSqrt, e); }
Expr exp(const Expr& e) { return Expr::Unary(ExprKind::kExp, e); }
Expr log(const Expr& e) { return Expr::Unary(ExprKind::kLog, e); }
Expr sin(const Expr& e) { return Expr::Unary(ExprKind::kSin, e); }
Expr cos(const Expr& e) { return Expr::Unary(ExprKind::kCos, e); }
Expr tan(const Expr& e) { return Expr::Unary(ExprKind::kTan, e); }
Expr asin(const Expr& e) { return Expr::Unary(ExprKind::kAsin, e); }
Expr acos(const Expr& e) { return Expr::Unary(ExprKind::kAcos, e); }
Expr atan(const Expr& e) { return Expr::Unary(ExprKind::kAtan, e); }
Expr sinh(const Expr& e) { return Expr::Unary(ExprKind::kSinh, e); }
Expr cosh(const Expr& e) { return Expr::Unary(ExprKind::kCosh, e); }
Expr tanh(const Expr& e) { return Expr::Unary(ExprKind::kTanh, e); }
Expr min(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kMin, a, b); }
Expr max(const Expr& a, const Expr& b) { return Expr::Binary(ExprKind::kMax, a, b); }

namespace {

// Splits e into (rest, c) with e == rest + c. rest is empty when e is a
// constant.
std::pair<std::optional<Expr>, Rational> SplitAdditiveConstant(const Expr& e) {
  if (e.is_constant()) return {std::nullopt, e.value()};
  if (e.kind() == ExprKind::kAdd || e.kind() == ExprKind::kSub) {
    const bool sub = e.kind() == ExprKind::kSub;
    if (e.arg(1).is_constant()) {
      auto [rest, c] = SplitAdditiveConstant(e.arg(0));
      const Rational k = sub ? Rational(c - e.arg(1).value()) : Rational(c + e.arg(1).value());
      return {rest, k};
    }
    if (!sub && e.arg(0).is_constant()) {
      auto [rest, c] = SplitAdditiveConstant(e.arg(1));
      return {rest, c + e.arg(0).value()};
    }
  }
  return {e, Rational(0)};
}

}  // namespace

Expr FoldConstants(const Expr& e) {
  if (e.is_variable() || e.is_constant()) return e;
  if (e.kind() == ExprKind::kPow) {
    const Expr base = FoldConstants(e.arg(0));
    if (base.is_constant() && base.value() != 0) {
      const int n = e.exponent();
      Rational r{1};
      for (int i = 0; i < std::abs(n); ++i) r *= base.value();
      return Expr::Constant(n > 0 ? r : Rational(1 / r));
    }
    return Expr::Pow(base, e.exponent());
  }
  std::vector<Expr> args;
  bool all_constant = true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    args.push_back(FoldConstants(e.arg(i)));
    all_constant = all_constant && args.back().is_constant();
  }
  if (all_constant) {
    switch (e.kind()) {
      case ExprKind::kNeg: return Expr::Constant(Rational(-args[0].value()));
      case ExprKind::kAbs: return Expr::Constant(Rational(abs(args[0].value())));
      case ExprKind::kAdd: return Expr::Constant(Rational(args[0].value() + args[1].value()));
      case ExprKind::kSub: return Expr::Constant(Rational(args[0].value() - args[1].value()));
      case ExprKind::kMul: return Expr::Constant(Rational(args[0].value() * args[1].value()));
      case ExprKind::kDiv:
        if (args[1].value() != 0) {
          return Expr::Constant(Rational(args[0].value() / args[1].value()));
        }
        break;
      case ExprKind::kMin: return Expr::Constant(std::min(args[0].value(), args[1].value()));
      case ExprKind::kMax: return Expr::Constant(std::max(args[0].value(), args[1].value()));
      default:
        break;  // Transcendental of a constant stays symbolic.
    }
  }
  Expr rebuilt = args.size() == 1 ? Expr::Unary(e.kind(), args[0])
                                  : Expr::Binary(e.kind(), args[0], args[1]);
  if (rebuilt.kind() == ExprKind::kAdd || rebuilt.kind() == ExprKind::kSub) {
    auto [rest, c] = SplitAdditiveConstant(rebuilt);
    if (rest && rest->id() != rebuilt.id()) {
      if (c == 0) return *rest;
      return c > 0 ? *rest + Expr::Constant(c) : *rest - Expr::Constant(Rational(-c));
    }
  }
  return rebuilt;
}

}  // namespace dforall

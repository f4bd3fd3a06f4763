#include "dforall/interval.h"

#include <algorithm>
#include <cstdio>

namespace dforall {

namespace {

constexpr double kInf = Interval::kInf;
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude a product or quotient may have lost bits to underflow
// and the error-free transformations are no longer exact.
constexpr double kTiny = 1e-290;
// 3.141592653589793 is the double just below pi.
constexpr double kPiLo = 3.141592653589793;

using rounding::Down;
using rounding::Up;

double OverflowDown(double s) { return s == kInf ? kMax : s; }
double OverflowUp(double s) { return s == -kInf ? -kMax : s; }

}  // namespace

namespace rounding {

double AddDown(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) return -kInf;
  if (std::isinf(s)) return std::isinf(a) || std::isinf(b) ? s : OverflowDown(s);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? Down(s) : s;
}

double AddUp(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) return kInf;
  if (std::isinf(s)) return std::isinf(a) || std::isinf(b) ? s : OverflowUp(s);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? Up(s) : s;
}

double SubDown(double a, double b) { return AddDown(a, -b); }
double SubUp(double a, double b) { return AddUp(a, -b); }

double MulDown(double a, double b) {
  if (a == 0 || b == 0) return 0;
  const double p = a * b;
  if (std::isinf(p)) return std::isinf(a) || std::isinf(b) ? p : OverflowDown(p);
  if (std::fabs(p) < kTiny) return Down(p);
  return std::fma(a, b, -p) < 0 ? Down(p) : p;
}

double MulUp(double a, double b) {
  if (a == 0 || b == 0) return 0;
  const double p = a * b;
  if (std::isinf(p)) return std::isinf(a) || std::isinf(b) ? p : OverflowUp(p);
  if (std::fabs(p) < kTiny) return Up(p);
  return std::fma(a, b, -p) > 0 ? Up(p) : p;
}

double DivDown(double a, double b) {
  const double q = a / b;
  if (std::isnan(q)) return -kInf;
  if (std::isinf(a) || std::isinf(b)) return q;
  if (std::isinf(q)) return OverflowDown(q);
  if (a == 0) return q;
  if (std::fabs(q) < kTiny) return Down(q);
  const double r = std::fma(-q, b, a);  // a - q*b, exact
  return (r < 0) != (b < 0) && r != 0 ? Down(q) : q;
}

double DivUp(double a, double b) {
  const double q = a / b;
  if (std::isnan(q)) return kInf;
  if (std::isinf(a) || std::isinf(b)) return q;
  if (std::isinf(q)) return OverflowUp(q);
  if (a == 0) return q;
  if (std::fabs(q) < kTiny) return Up(q);
  const double r = std::fma(-q, b, a);
  return (r > 0) == (b > 0) && r != 0 ? Up(q) : q;
}

double SqrtDown(double a) {
  const double s = std::sqrt(a);
  if (std::isinf(s) || s == 0) return s;
  return std::fma(-s, s, a) < 0 ? Down(s) : s;
}

double SqrtUp(double a) {
  const double s = std::sqrt(a);
  if (std::isinf(s) || s == 0) return s;
  return std::fma(-s, s, a) > 0 ? Up(s) : s;
}

}  // namespace rounding

using namespace rounding;

double Interval::width() const {
  if (is_empty()) return 0;
  return SubUp(hi_, lo_);
}

double Interval::mid() const {
  if (is_empty()) return std::nan("");
  if (lo_ == -kInf) return hi_ == kInf ? 0.0 : -kMax;
  if (hi_ == kInf) return kMax;
  const double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  if (x.is_empty()) return os << "[empty]";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%.17g, %.17g]", x.lo(), x.hi());
  return os << buf;
}

Interval Intersect(const Interval& a, const Interval& b) {
  return Interval(std::fmax(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

Interval Hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  return Interval(AddDown(a.lo(), b.lo()), AddUp(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  return Interval(SubDown(a.lo(), b.hi()), SubUp(a.hi(), b.lo()));
}

Interval operator-(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval(-a.hi(), -a.lo());
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  const double lo = std::min({MulDown(a.lo(), b.lo()), MulDown(a.lo(), b.hi()),
                              MulDown(a.hi(), b.lo()), MulDown(a.hi(), b.hi())});
  const double hi = std::max({MulUp(a.lo(), b.lo()), MulUp(a.lo(), b.hi()),
                              MulUp(a.hi(), b.lo()), MulUp(a.hi(), b.hi())});
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  if (b.lo() == 0 && b.hi() == 0) return Interval::Empty();
  if (a.lo() == 0 && a.hi() == 0) return a;
  if (b.contains_zero()) return Interval::Entire();
  const double lo = std::min({DivDown(a.lo(), b.lo()), DivDown(a.lo(), b.hi()),
                              DivDown(a.hi(), b.lo()), DivDown(a.hi(), b.hi())});
  const double hi = std::max({DivUp(a.lo(), b.lo()), DivUp(a.lo(), b.hi()),
                              DivUp(a.hi(), b.lo()), DivUp(a.hi(), b.hi())});
  return Interval(lo, hi);
}

Interval Abs(const Interval& x) {
  if (x.is_empty()) return x;
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return Interval(0, x.mag());
}

namespace {

// v >= 0, n >= 1.
double PowPosDown(double v, int n) {
  double result = 1;
  double base = v;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) result = MulDown(result, base);
    if (k > 1) base = MulDown(base, base);
  }
  return std::fmax(result, 0.0);
}

double PowPosUp(double v, int n) {
  double result = 1;
  double base = v;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) result = MulUp(result, base);
    if (k > 1) base = MulUp(base, base);
  }
  return result;
}

double RootPosDown(double v, int n) {
  if (n == 1 || v == 0 || v == kInf) return v;
  if (n == 2) return SqrtDown(v);
  double r = std::pow(v, 1.0 / n);
  for (int i = 0; i < 64 && PowPosUp(r, n) > v; ++i) r = Down(r);
  return std::fmax(r, 0.0);
}

double RootPosUp(double v, int n) {
  if (n == 1 || v == 0 || v == kInf) return v;
  if (n == 2) return SqrtUp(v);
  double r = std::pow(v, 1.0 / n);
  for (int i = 0; i < 64 && PowPosDown(r, n) < v; ++i) r = Up(r);
  return r;
}

Interval PositivePow(const Interval& x, int n) {
  if (n % 2 == 1) {
    const double lo = x.lo() >= 0 ? PowPosDown(x.lo(), n) : -PowPosUp(-x.lo(), n);
    const double hi = x.hi() >= 0 ? PowPosUp(x.hi(), n) : -PowPosDown(-x.hi(), n);
    return Interval(lo, hi);
  }
  const double m = x.mag();
  if (x.contains_zero()) return Interval(0, PowPosUp(m, n));
  const double small = std::fmin(std::fabs(x.lo()), std::fabs(x.hi()));
  return Interval(PowPosDown(small, n), PowPosUp(m, n));
}

Interval Reciprocal(const Interval& w) {
  if (w.is_empty() || (w.lo() == 0 && w.hi() == 0)) return Interval::Empty();
  if (w.lo() == 0) return Interval(DivDown(1, w.hi()), kInf);
  if (w.hi() == 0) return Interval(-kInf, DivUp(1, w.lo()));
  return Interval::Point(1) / w;
}

// One-ulp enclosure of a library value, with exact special cases handled by
// the caller.
double LibDown(double v) { return Down(v); }
double LibUp(double v) { return Up(v); }

// Whether offset + k * period, for some integer k, may lie in x.
bool MayContainPeriodic(const Interval& x, double offset, double period) {
  const double scale = std::max({1.0, std::fabs(x.lo()), std::fabs(x.hi())});
  const double slack = 8e-15 * scale;
  const double k0 = std::floor((x.lo() - offset) / period);
  for (double k = k0 - 1; k <= k0 + 3; k += 1) {
    const double pt = offset + k * period;
    if (pt >= x.lo() - slack && pt <= x.hi() + slack) return true;
  }
  return false;
}

constexpr double kTwoPi = 2 * kPiLo;
constexpr double kHalfPi = kPiLo / 2;

}  // namespace

Interval Pow(const Interval& x, int n) {
  if (x.is_empty()) return x;
  if (n > 0) return PositivePow(x, n);
  if (n == 0) return Interval(1, 1);
  return Reciprocal(PositivePow(x, -n));
}

Interval Sqr(const Interval& x) { return Pow(x, 2); }

Interval Root(const Interval& x, int n) {
  if (x.is_empty()) return x;
  if (n % 2 == 0) {
    const Interval y = Intersect(x, Interval(0, kInf));
    if (y.is_empty()) return y;
    return Interval(RootPosDown(y.lo(), n), RootPosUp(y.hi(), n));
  }
  const double lo = x.lo() >= 0 ? RootPosDown(x.lo(), n) : -RootPosUp(-x.lo(), n);
  const double hi = x.hi() >= 0 ? RootPosUp(x.hi(), n) : -RootPosDown(-x.hi(), n);
  return Interval(lo, hi);
}

Interval Sqrt(const Interval& x) { return Root(x, 2); }

Interval Exp(const Interval& x) {
  if (x.is_empty()) return x;
  const double lo = x.lo() == 0 ? 1.0 : std::fmax(0.0, LibDown(std::exp(x.lo())));
  const double hi = x.hi() == 0 ? 1.0 : LibUp(std::exp(x.hi()));
  return Interval(lo, hi);
}

Interval Log(const Interval& x) {
  const Interval y = Intersect(x, Interval(0, kInf));
  if (y.is_empty() || y.hi() == 0) return Interval::Empty();
  const double lo = y.lo() == 0 ? -kInf : (y.lo() == 1 ? 0.0 : LibDown(std::log(y.lo())));
  const double hi = y.hi() == 1 ? 0.0 : LibUp(std::log(y.hi()));
  return Interval(lo, hi);
}

namespace {

double SinDown(double v) { return v == 0 ? 0.0 : std::fmax(-1.0, LibDown(std::sin(v))); }
double SinUp(double v) { return v == 0 ? 0.0 : std::fmin(1.0, LibUp(std::sin(v))); }
double CosDown(double v) { return v == 0 ? 1.0 : std::fmax(-1.0, LibDown(std::cos(v))); }
double CosUp(double v) { return v == 0 ? 1.0 : std::fmin(1.0, LibUp(std::cos(v))); }

bool TooWideForTrig(const Interval& x) {
  return !x.is_bounded() || x.width() >= kTwoPi || x.mag() > 1e15;
}

}  // namespace

Interval Sin(const Interval& x) {
  if (x.is_empty()) return x;
  if (TooWideForTrig(x)) return Interval(-1, 1);
  double lo = std::fmin(SinDown(x.lo()), SinDown(x.hi()));
  double hi = std::fmax(SinUp(x.lo()), SinUp(x.hi()));
  if (MayContainPeriodic(x, kHalfPi, kTwoPi)) hi = 1;
  if (MayContainPeriodic(x, -kHalfPi, kTwoPi)) lo = -1;
  return Interval(lo, hi);
}

Interval Cos(const Interval& x) {
  if (x.is_empty()) return x;
  if (TooWideForTrig(x)) return Interval(-1, 1);
  double lo = std::fmin(CosDown(x.lo()), CosDown(x.hi()));
  double hi = std::fmax(CosUp(x.lo()), CosUp(x.hi()));
  if (MayContainPeriodic(x, 0, kTwoPi)) hi = 1;
  if (MayContainPeriodic(x, kPiLo, kTwoPi)) lo = -1;
  return Interval(lo, hi);
}

Interval Tan(const Interval& x) {
  if (x.is_empty()) return x;
  if (TooWideForTrig(x) || x.width() >= kPiLo || MayContainPeriodic(x, kHalfPi, kPiLo)) {
    return Interval::Entire();
  }
  const double lo = x.lo() == 0 ? 0.0 : LibDown(std::tan(x.lo()));
  const double hi = x.hi() == 0 ? 0.0 : LibUp(std::tan(x.hi()));
  return Interval(lo, hi);
}

Interval Asin(const Interval& x) {
  const Interval y = Intersect(x, Interval(-1, 1));
  if (y.is_empty()) return y;
  const double bound = Up(kHalfPi);
  const double lo = y.lo() == 0 ? 0.0 : std::fmax(-bound, LibDown(std::asin(y.lo())));
  const double hi = y.hi() == 0 ? 0.0 : std::fmin(bound, LibUp(std::asin(y.hi())));
  return Interval(lo, hi);
}

Interval Acos(const Interval& x) {
  const Interval y = Intersect(x, Interval(-1, 1));
  if (y.is_empty()) return y;
  const double lo = y.hi() == 1 ? 0.0 : std::fmax(0.0, LibDown(std::acos(y.hi())));
  const double hi = std::fmin(Up(kPiLo), LibUp(std::acos(y.lo())));
  return Interval(lo, hi);
}

Interval Atan(const Interval& x) {
  if (x.is_empty()) return x;
  const double bound = Up(kHalfPi);
  const double lo = x.lo() == 0 ? 0.0 : std::fmax(-bound, LibDown(std::atan(x.lo())));
  const double hi = x.hi() == 0 ? 0.0 : std::fmin(bound, LibUp(std::atan(x.hi())));
  return Interval(lo, hi);
}

Interval Sinh(const Interval& x) {
  if (x.is_empty()) return x;
  const double lo = x.lo() == 0 ? 0.0 : LibDown(std::sinh(x.lo()));
  const double hi = x.hi() == 0 ? 0.0 : LibUp(std::sinh(x.hi()));
  return Interval(lo, hi);
}

Interval Cosh(const Interval& x) {
  if (x.is_empty()) return x;
  const double hi = LibUp(std::cosh(x.mag()));
  if (x.contains_zero()) return Interval(1, hi);
  const double small = std::fmin(std::fabs(x.lo()), std::fabs(x.hi()));
  return Interval(std::fmax(1.0, LibDown(std::cosh(small))), hi);
}

Interval Tanh(const Interval& x) {
  if (x.is_empty()) return x;
  const double lo = x.lo() == 0 ? 0.0 : std::fmax(-1.0, LibDown(std::tanh(x.lo())));
  const double hi = x.hi() == 0 ? 0.0 : std::fmin(1.0, LibUp(std::tanh(x.hi())));
  return Interval(lo, hi);
}

Interval Asinh(const Interval& x) {
  if (x.is_empty()) return x;
  const double lo = x.lo() == 0 ? 0.0 : LibDown(std::asinh(x.lo()));
  const double hi = x.hi() == 0 ? 0.0 : LibUp(std::asinh(x.hi()));
  return Interval(lo, hi);
}

Interval Acosh(const Interval& x) {
  const Interval y = Intersect(x, Interval(1, kInf));
  if (y.is_empty()) return y;
  const double lo = y.lo() == 1 ? 0.0 : std::fmax(0.0, LibDown(std::acosh(y.lo())));
  return Interval(lo, LibUp(std::acosh(y.hi())));
}

Interval Atanh(const Interval& x) {
  const Interval y = Intersect(x, Interval(-1, 1));
  if (y.is_empty()) return y;
  const double lo = y.lo() == -1 ? -kInf : (y.lo() == 0 ? 0.0 : LibDown(std::atanh(y.lo())));
  const double hi = y.hi() == 1 ? kInf : (y.hi() == 0 ? 0.0 : LibUp(std::atanh(y.hi())));
  return Interval(lo, hi);
}

Interval Min(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  return Interval(std::fmin(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

Interval Max(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::Empty();
  return Interval(std::fmax(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval Pi() { return Interval(kPiLo, Up(kPiLo)); }

}  // namespace dforall

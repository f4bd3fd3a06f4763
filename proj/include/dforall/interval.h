#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace dforall {

/// Closed interval over the extended reals. The empty interval is stored as
/// [+inf, -inf]. Every operation returns an enclosure of the exact real
/// image: basic arithmetic and sqrt are rounded outward exactly (error-free
/// transformations, no rounding-mode switches), elementary functions are
/// widened by one ulp around the round-to-nearest library value.
class Interval {
 public:
  constexpr Interval() : lo_(kInf), hi_(-kInf) {}
  constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) {
      lo_ = kInf;
      hi_ = -kInf;
    }
  }
  static constexpr Interval Point(double v) { return Interval(v, v); }
  static constexpr Interval Empty() { return Interval(); }
  static constexpr Interval Entire() { return Interval(-kInf, kInf); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_empty() const { return lo_ > hi_; }
  bool is_degenerate() const { return lo_ == hi_; }
  bool is_bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }
  /// hi - lo rounded up; 0 for the empty interval.
  double width() const;
  /// Midpoint rounded to nearest; finite for bounded intervals.
  double mid() const;
  double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool is_subset_of(const Interval& other) const {
    return is_empty() || (other.lo_ <= lo_ && hi_ <= other.hi_);
  }
  bool operator==(const Interval& other) const {
    return (is_empty() && other.is_empty()) || (lo_ == other.lo_ && hi_ == other.hi_);
  }

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  double lo_;
  double hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

Interval Intersect(const Interval& a, const Interval& b);
Interval Hull(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// A divisor containing zero yields Entire(); the divisor [0, 0] yields Empty().
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval Abs(const Interval& x);
Interval Sqr(const Interval& x);
/// Integer power, exponent != 0. Dependency-aware for even exponents.
Interval Pow(const Interval& x, int n);
/// Real n-th root of x for n >= 1; for even n only the nonnegative branch.
Interval Root(const Interval& x, int n);
Interval Sqrt(const Interval& x);
Interval Exp(const Interval& x);
Interval Log(const Interval& x);
Interval Sin(const Interval& x);
Interval Cos(const Interval& x);
Interval Tan(const Interval& x);
Interval Asin(const Interval& x);
Interval Acos(const Interval& x);
Interval Atan(const Interval& x);
Interval Sinh(const Interval& x);
Interval Cosh(const Interval& x);
Interval Tanh(const Interval& x);
Interval Asinh(const Interval& x);
Interval Acosh(const Interval& x);
Interval Atanh(const Interval& x);
Interval Min(const Interval& a, const Interval& b);
Interval Max(const Interval& a, const Interval& b);

/// Enclosure of pi.
Interval Pi();

namespace rounding {

double AddDown(double a, double b);
double AddUp(double a, double b);
double SubDown(double a, double b);
double SubUp(double a, double b);
double MulDown(double a, double b);
double MulUp(double a, double b);
double DivDown(double a, double b);
double DivUp(double a, double b);
double SqrtDown(double a);
double SqrtUp(double a);
inline double Down(double v) { return std::nextafter(v, -Interval::kInf); }
inline double Up(double v) { return std::nextafter(v, Interval::kInf); }

}  // namespace rounding

}  // namespace dforall

#include "dforall/rational.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dforall {

namespace {

using boost::multiprecision::cpp_int;

cpp_int Pow10(int n) {
  cpp_int result{1};
  for (int i = 0; i < n; ++i) result *= 10;
  return result;
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

cpp_int ParseDigits(std::string_view s) {
  const std::size_t first = std::min(s.find_first_not_of('0'), s.size() - 1);
  return cpp_int{std::string(s.substr(first))};
}

[[noreturn]] void Malformed(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) Malformed(text);
    const cpp_int d = ParseDigits(den);
    if (d == 0) Malformed(text);
    value = Rational(ParseDigits(num), d);
  } else {
    std::string_view mantissa = s;
    int exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!AllDigits(exp_text) || exp_text.size() > 6) Malformed(text);
      exponent = std::stoi(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    int fraction_digits = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      const std::string_view int_part = mantissa.substr(0, dot);
      const std::string_view frac_part = mantissa.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) Malformed(text);
      if (!int_part.empty() && !AllDigits(int_part)) Malformed(text);
      if (!frac_part.empty() && !AllDigits(frac_part)) Malformed(text);
      digits = std::string(int_part) + std::string(frac_part);
      fraction_digits = static_cast<int>(frac_part.size());
    } else {
      if (!AllDigits(mantissa)) Malformed(text);
      digits = std::string(mantissa);
    }
    exponent -= fraction_digits;
    const cpp_int n = ParseDigits(digits);
    value = exponent >= 0 ? Rational(n * Pow10(exponent))
                          : Rational(n, Pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

Rational FromDouble(double d) {
  if (!std::isfinite(d)) {
    throw std::invalid_argument("FromDouble: non-finite value");
  }
  int exp = 0;
  const double frac = std::frexp(d, &exp);
  // frac * 2^53 is an exact integer.
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  exp -= 53;
  cpp_int n{mant};
  if (exp >= 0) {
    return Rational(n << exp);
  }
  return Rational(n, cpp_int{1} << -exp);
}

double ToDouble(const Rational& r) {
  const double approx = r.convert_to<double>();
  if (!std::isfinite(approx)) return approx;
  // Correct a possibly misrounded conversion by checking the neighbours.
  double best = approx;
  Rational best_err = abs(FromDouble(approx) - r);
  for (double cand : {std::nextafter(approx, -HUGE_VAL), std::nextafter(approx, HUGE_VAL)}) {
    if (!std::isfinite(cand)) continue;
    const Rational err = abs(FromDouble(cand) - r);
    if (err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  return best;
}

double ToDoubleDown(const Rational& r) {
  const double d = ToDouble(r);
  if (!std::isfinite(d)) return d > 0 ? std::numeric_limits<double>::max() : d;
  return FromDouble(d) > r ? std::nextafter(d, -HUGE_VAL) : d;
}

double ToDoubleUp(const Rational& r) {
  const double d = ToDouble(r);
  if (!std::isfinite(d)) return d < 0 ? std::numeric_limits<double>::lowest() : d;
  return FromDouble(d) < r ? std::nextafter(d, HUGE_VAL) : d;
}

std::string ToString(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string ToDecimalString(const Rational& r) {
  cpp_int den = denominator(r);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return ToString(r);
  const int places = std::max(twos, fives);
  if (places == 0) return numerator(r).str();
  const cpp_int scaled = numerator(r) * Pow10(places) / denominator(r);
  const bool negative = scaled < 0;
  std::string digits = (negative ? cpp_int(-scaled) : scaled).str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

}  // namespace dforall

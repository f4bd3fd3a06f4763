#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dforall {

using Rational = boost::multiprecision::cpp_rational;

/// Parses an integer, a decimal (optionally with exponent, e.g. "-1.5e-3"),
/// or a fraction "p/q". Throws std::invalid_argument on malformed input.
Rational ParseRational(std::string_view text);

/// Nearest double (ties to even).
double ToDouble(const Rational& r);
/// Largest double <= r.
double ToDoubleDown(const Rational& r);
/// Smallest double >= r.
double ToDoubleUp(const Rational& r);

/// Exact value of a finite double.
Rational FromDouble(double d);

/// "3", "-1/7", ...; round-trips through ParseRational.
std::string ToString(const Rational& r);

/// Terminating decimal expansion when one exists ("0.001"), otherwise the
/// fraction form.
std::string ToDecimalString(const Rational& r);

}  // namespace dforall

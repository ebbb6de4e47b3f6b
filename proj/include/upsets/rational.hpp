#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace upsets {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/8", "0.125", "-2", "7". Decimal strings are converted exactly
// (0.1 becomes 1/10, not the nearest double). Throws MalformedInputError.
Rational parse_rational(std::string_view text);

// "3/8" when the denominator is not 1, otherwise just the numerator.
std::string format_rational(const Rational& r);

// r^e for e >= 0. (Negative powers are avoided throughout by cross-multiplying.)
Rational rational_pow(const Rational& r, int e);

Int int_pow(const Int& base, int e);

Int binomial(int n, int t);

double to_double(const Rational& r);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace upsets

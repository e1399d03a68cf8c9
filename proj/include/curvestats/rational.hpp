#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curvestats {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer integer_pow(Integer base, unsigned long e);
Rational rational_pow(const Rational& base, long e);

Integer factorial(unsigned long n);

/// C(n, k) by the incremental product n!/(k!(n-k)!); exact at every step.
Integer binomial(unsigned long n, unsigned long k);

/// Natural log of a positive big integer, accurate to ~1e-15 relative.
double log_integer(const Integer& x);

/// Natural log of a positive rational.
double log_rational(const Rational& x);

double to_double(const Rational& x);

/// "num/den" rendering; exact values always carry an explicit denominator.
std::string to_fraction_string(const Rational& r);

/// Parse "num/den" or a bare integer.
Rational parse_fraction(const std::string& s);

/// Decimal rendering with the given number of fractional digits,
/// rounded to nearest (ties away from zero).
std::string to_decimal_string(const Rational& r, int digits);

}  // namespace curvestats

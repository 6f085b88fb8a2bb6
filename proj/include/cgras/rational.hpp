// Exact rational arithmetic shared by every symbolic module.
#pragma once

#include <gmpxx.h>

#include <string>

namespace cgras {

using Rational = mpq_class;

// Builds num/den in canonical form. Throws std::invalid_argument on a zero denominator.
Rational make_rational(long num, long den = 1);

// Parses "3", "-3/4" or "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

// Numerator and denominator as decimal strings, used by the JSON encoders.
std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace cgras

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cantor {

using Integer = mpz_class;
using Rational = mpq_class;

// Parse a decimal literal ("3.54", "-0.25", "7") or a fraction ("355/113")
// into an exact rational.
Rational rational_from_string(const std::string& text);

// Fixed-point rendering with the requested number of fractional digits.
// round_half_even selects banker's rounding; otherwise truncation toward zero.
std::string to_decimal(const Rational& value, int digits, bool round_half_even = true);

// Truncation toward zero, kept separate because the printed tables use it.
std::string truncate_decimal(const Rational& value, int digits);

// True when `value` reproduces the printed decimal digit for digit at the
// printed precision.  Accepts either truncation or half-even rounding, since
// the source tables mix both conventions.
bool matches_printed(const Rational& value, const std::string& printed);

inline int sign_of(const Rational& r) { return sgn(r); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct resource_limit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cantor

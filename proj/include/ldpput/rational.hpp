#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ldpput {

/** Exact rational scalar used throughout the geometry and decision code. */
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/**
 * Parse "p/q", "p", or a plain decimal such as "0.25" into an exact rational.
 * Throws ParseError on anything else (including a zero denominator).
 */
Rational parse_rational(std::string_view text);

/** Canonical "p/q" form; integers print without a denominator. */
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/** Exact conversion of a finite double (every finite double is a dyadic rational). */
Rational from_double(double x);

/**
 * Best rational approximation of x with denominator at most max_denominator,
 * from the continued-fraction convergents and the last semiconvergent.
 */
Rational rational_approximation(double x, unsigned long max_denominator);

Rational sum(const RationalVector& v);

bool is_zero(const RationalVector& v);

} // namespace ldpput

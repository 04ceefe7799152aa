#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tinopt {

/// Exact rational backed by GMP. Expression templates are disabled so that
/// `auto` captures values rather than lazy expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "3", "-0.25", "1.5e-2" or "7/3" into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Formats a rational as a terminating decimal when the denominator only has
/// factors 2 and 5, otherwise as "p/q". Output re-parses to the same value.
std::string format_rational(const Rational& value);

/// Shortest decimal string that round-trips the given double.
std::string format_double(double value);

}  // namespace tinopt

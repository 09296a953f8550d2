#ifndef WMSF_RATIONAL_HPP
#define WMSF_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wmsf {

/// Exact arbitrary-precision rational; all potentials and cocycle ratios
/// are carried in this type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Accepts "n", "n/d" and plain decimals such as "0.125" or "-3e-2".
/// Throws ParseError.
Rational parse_rational(std::string_view text);

/// "n" for integers, otherwise "n/d" in lowest terms.
std::string format_rational(const Rational& r);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

double to_double(const Rational& r);
/// Natural logarithm of a positive rational, accurate beyond double range.
double log_of(const Rational& r);

/// base^exponent for any integer exponent; base must be nonzero when the
/// exponent is negative.
Rational pow(const Rational& base, std::int64_t exponent);

}  // namespace wmsf

#endif

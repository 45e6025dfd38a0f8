#ifndef SDND_RATIONAL_HPP
#define SDND_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace sdnd {

/// Exact arbitrary-precision rational. All decision-path arithmetic uses it.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Request and hop counts.
using Count = std::int64_t;

/// Parses "12", "-3", "5.88", "1e4", "2.0e28", "3/2" exactly.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Fixed-point decimal rendering, rounding half away from zero.
std::string to_decimal(const Rational& value, int fractional_digits = 6);

double to_double(const Rational& value);

}  // namespace sdnd

#endif  // SDND_RATIONAL_HPP

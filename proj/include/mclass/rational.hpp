#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mclass {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p". With `canonical` set, rejects non-reduced fractions
/// and denominators written with a sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text, bool canonical = true);

/// Always "p/q", including integers ("1/1", "0/1").
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

Rational abs(const Rational& value);

}  // namespace mclass

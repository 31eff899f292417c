#pragma once
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mrpgen {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;

// Parses a plain decimal literal ("0.03655", "1", ".5", "1/3") into an exact
// rational. Throws std::invalid_argument on anything else.
Rational parse_decimal(std::string_view text);

Real to_real(const Rational& value);

// Fixed-point rendering with `digits` fractional digits.
std::string format_real(const Real& value, int digits);
std::string format_scientific(const Real& value, int digits);

} // namespace mrpgen

#include "mrpgen/numeric.hpp"

#include <cctype>
#include <ios>
#include <stdexcept>

namespace mrpgen {

namespace {

// cpp_int reads a leading 0 as an octal prefix.
BigInt
decimal_int(std::string_view digits)
{
  const auto nz = digits.find_first_not_of('0');
  if (nz == std::string_view::npos) {
    return 0;
  }
  return BigInt(std::string(digits.substr(nz)));
}

bool
all_digits(std::string_view s)
{
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

[[noreturn]] void
bad_decimal(std::string_view text)
{
  throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
}

} // namespace

Rational
parse_decimal(std::string_view text)
{
  if (text.empty()) {
    bad_decimal(text);
  }

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) {
      bad_decimal(text);
    }
    const BigInt d = decimal_int(den);
    if (d == 0) {
      bad_decimal(text);
    }
    return Rational(decimal_int(num), d);
  }

  const auto dot = text.find('.');
  const auto int_part = text.substr(0, dot);
  const auto frac_part =
    dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) ||
      !all_digits(frac_part)) {
    bad_decimal(text);
  }

  const std::string digits = std::string(int_part) + std::string(frac_part);
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) {
    den *= 10;
  }
  return Rational(decimal_int(digits), den);
}

Real
to_real(const Rational& value)
{
  return Real(boost::multiprecision::numerator(value)) /
         Real(boost::multiprecision::denominator(value));
}

std::string
format_real(const Real& value, int digits)
{
  return value.str(digits, std::ios_base::fixed);
}

std::string
format_scientific(const Real& value, int digits)
{
  return value.str(digits, std::ios_base::scientific);
}

} // namespace mrpgen

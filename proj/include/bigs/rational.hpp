#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bigs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(a, b), zero when b > a.
BigInt binomial(std::uint64_t a, std::uint64_t b);

/// Accepts integers, decimals with optional exponent ("2.5", "-1e-3") and
/// fractions ("7/10"). Decimal input is converted exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one. Inverse of parse_rational.
std::string to_exact_string(const Rational& r);

/// Fixed-point rendering, rounded half away from zero.
std::string to_fixed(const Rational& r, int decimals);

double to_double(const Rational& r);

}  // namespace bigs

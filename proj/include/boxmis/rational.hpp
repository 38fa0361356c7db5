#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace boxmis {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Parses `num/den`, an integer, or a decimal literal such as `-2.651`.
/// Decimals are converted exactly (2.651 -> 2651/1000).
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// `num/den`, or just `num` when the value is an integer.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Fixed-point decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& value, int digits);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// Exact k-th root when both numerator and denominator are perfect k-th powers.
std::optional<Rational> exact_root(const Rational& value, unsigned k);

/// Smallest integer c >= 1 with c^k >= value. Exact; no floating point involved.
BigInt ceil_kth_root(const Rational& value, unsigned k);

/// Smallest t >= 0 with 2^t >= value.
unsigned ceil_log2(const Rational& value);

/// The rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace boxmis

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tslice {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Canonical fraction text: "3", "2/5", "-1/2".
std::string to_fraction_string(const Rational& r);

/// Decimal approximation rounded half away from zero to `places` digits,
/// trailing zeros trimmed ("0.4", "0.333333", "12").
std::string to_decimal_string(const Rational& r, int places = 6);

/// Accepts "7", "-7", "2/5", "2.5". Returns nullopt on malformed text or a
/// zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

} // namespace tslice

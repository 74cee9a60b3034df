#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bes {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
[[nodiscard]] std::string to_string(const Rational& q);

/// Accepts "p", "p/q" or a finite decimal such as "0.05". Throws
/// std::invalid_argument on anything else or a zero denominator.
[[nodiscard]] Rational parse_rational(std::string_view text);

[[nodiscard]] inline double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

} // namespace bes

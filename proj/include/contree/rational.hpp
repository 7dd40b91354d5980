#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace contree {

/// Exact rational used for edge parameters, edge lengths and tree metrics.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or an integer. Throws std::invalid_argument on bad input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Renders as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);

}  // namespace contree

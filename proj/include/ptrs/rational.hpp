#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptrs {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// `num` when the denominator is 1, `num/den` otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts `3`, `-2`, `3/4`, and decimal literals such as `0.25`.
/// Throws Error(Syntax) on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

}  // namespace ptrs

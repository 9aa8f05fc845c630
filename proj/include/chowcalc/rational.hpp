#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace chowcalc {

// Expression templates off: an `auto` bound to a sum must not dangle.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// "p" for integers, "p/q" otherwise, q > 0 and gcd(p, q) = 1.
std::string format_rational(const Rational& r);

/// Accepts "p", "-p", "p/q". Throws Error(Parse) on malformed input or q = 0.
Rational parse_rational(std::string_view text);

}  // namespace chowcalc

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ratode {

/// Exact arbitrary-precision rational; the only number type inside expressions.
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

/// Parses "12", "-3/4" or a decimal literal such as "1.25" exactly.
/// Throws Error(InvalidArgument) on malformed input.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ratode

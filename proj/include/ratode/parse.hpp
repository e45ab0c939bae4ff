#pragma once

#include <string_view>

#include "ratode/expr.hpp"

namespace ratode {

/// Reads the text grammar produced by to_string:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := postfix ('^' integer-or-parenthesized-integer)?
///   postfix := primary '\''*              (primes: derivatives of a function)
///   primary := number | x | y | name | name '(' x ')' | '(' expr ')'
///            | ln(e) | arctan(e) | exp(e) | diff(e, x, k) | int(e, x, a)
///            | param(name)
///
/// Any other identifier is an unknown function of x. Literal quotients and
/// negated literals fold to a single constant. Throws Error(ParseError) with
/// the byte offset and the expected tokens.
/// `offset` is added to reported positions (for text embedded in a larger input).
Expr parse_expr(std::string_view text, std::size_t offset = 0);

}  // namespace ratode

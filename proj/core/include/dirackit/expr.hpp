#pragma once

#include <string>
#include <string_view>

#include "dirackit/ratfun.hpp"

namespace dirackit {

// Scalar expression grammar: integer literals, variables from the chart,
// + - * / ^ with the usual precedence, parentheses, insignificant whitespace.
// Exponents must be nonnegative integer literals. Rational literals like
// "3/4" are ordinary divisions. Unknown names and syntax errors raise
// ParseError carrying the offset.
RatFun parse_expr(std::string_view text, const Chart& chart);

// Canonical printing. The output always parses back to the same value:
// parse_expr(to_string(f, c), c) == f. Polynomials print in descending grlex
// term order; a non-trivial denominator prints as "(num)/(den)".
std::string to_string(const Poly& p);
std::string to_string(const RatFun& f);

}  // namespace dirackit

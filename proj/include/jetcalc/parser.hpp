#pragma once

#include <string_view>

#include "jetcalc/rational_expr.hpp"

namespace jetcalc::cli {

/// Parses an expression over the registered symbols (x, y, xt, yt, y1..y3,
/// yt1..yt3, z, the class coefficients and map partials such as x_1_0).
/// Precedence: ^ above unary minus above * / above + -; * / + - associate
/// left, ^ right.  Exponents are nonnegative integers.  Errors are
/// ParseError with a 1-based line and column.
RationalExpr parse_expression(std::string_view text);

} // namespace jetcalc::cli

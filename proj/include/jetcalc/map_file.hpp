#pragma once

#include <string>
#include <string_view>

#include "jetcalc/invariance.hpp"

namespace jetcalc::cli {

/// Map text: one assignment per line, '#' starts a comment.
///   x = <polynomial in xt, yt>
///   y = <polynomial in xt, yt>
///   base = (<rational>, <rational>)      optional working point
/// With `forward` the assignments are `xt = ...`, `yt = ...` in x, y and the
/// map must be affine or triangular (xt = a u + c with u one of x, y and the
/// other component e v + h(u)); it is inverted exactly.  Errors are ParseError.
ConcreteMap parse_map_text(std::string_view text, bool forward);

/// Inverts an affine or triangular forward map given as polynomials in x, y.
/// Throws DomainError for any other shape.
ConcreteMap invert_forward(const Polynomial& xt_of_xy, const Polynomial& yt_of_xy);

/// Resolves "general", "identity", "swap", or a path to a map file.
invariance::MapSpec resolve_map(const std::string& spec, bool forward);

} // namespace jetcalc::cli

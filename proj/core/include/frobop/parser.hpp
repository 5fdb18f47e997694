#ifndef FROBOP_PARSER_HPP
#define FROBOP_PARSER_HPP

#include <string_view>

#include "frobop/poly.hpp"

namespace frobop {

// Parses the polynomial grammar
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := base ('^' nat)?
//   base   := nat | var | '(' expr ')'
//   var    := [A-Za-z_][A-Za-z0-9_]*
//
// Whitespace is insignificant.  Omitting '*' is allowed only when the next
// factor starts with a variable or '('.  Integer literals reduce mod p.
// Unknown variables and oversized exponents are ParseErrors with position.
Poly parse_poly(std::string_view text, const ContextPtr& ctx);

} // namespace frobop

#endif
